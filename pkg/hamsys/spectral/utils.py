"""Linear operators and norms built from the eigenexpansion.

Every operator accepts a ``shift`` c >= 0 selecting -Delta + c in place of
-Delta; its eigenvalues are lambda_n + c.
"""
import numpy as np

from hamsys.spectral.models import Field, GridFunction


def spectrum(basis, shift: float = 0.0) -> np.ndarray:
    """Eigenvalues lambda_n + c of the shifted operator."""
    if shift < 0:
        raise ValueError(f"The potential must be nonnegative, got {shift}")
    return basis.eigenvalues + shift


def apply_inverse_laplacian(w: Field, shift: float = 0.0) -> Field:
    """K w: the Galerkin solution of (-Delta + c) u = w with Dirichlet conditions."""
    return Field(w.basis, w.coefficients / spectrum(w.basis, shift))


def apply_frac(w: Field, s: float, shift: float = 0.0) -> Field:
    """A^s w = (-Delta + c)^{s/2} w; negative s applies the inverse power."""
    return Field(w.basis, w.coefficients * spectrum(w.basis, shift) ** (s / 2))


def solve_poisson(values: np.ndarray, basis, shift: float = 0.0) -> Field:
    """Galerkin solution of (-Delta + c) u = h for nodal data h."""
    return Field(basis, basis.project(values) / spectrum(basis, shift))


def nodal_values(w) -> np.ndarray:
    if isinstance(w, Field):
        return w.nodal
    if isinstance(w, GridFunction):
        return w.values
    raise TypeError(f"Expected a Field or GridFunction, got {type(w).__name__}")


def weighted_integral(basis, values: np.ndarray, gamma: float = 0.0) -> float:
    """Quadrature of |x|^gamma h over the domain."""
    return basis.integrate(basis.weight(gamma) * values)


def lp_norm(w, r: float = 2.0, gamma: float = 0.0) -> float:
    """(int |x|^gamma |w|^r)^{1/r} by quadrature.

    Raises:
        ValueError: If r < 1.
        DomainError: If the weight is not integrable.
    """
    if r < 1:
        raise ValueError(f"Lebesgue exponent must be at least 1, got {r}")
    return power_integral(w, r, gamma) ** (1 / r)


def power_integral(w, r: float, gamma: float = 0.0) -> float:
    """int |x|^gamma |w|^r, defined for every r > 0.

    Data carrying an exact step ``profile`` (a rearrangement) is integrated through it.
    """
    profile = getattr(w, "profile", None)
    if profile is not None:
        return profile.power_integral(r, gamma)
    return weighted_integral(w.basis, np.abs(nodal_values(w)) ** r, gamma)


def e_norm(w: Field, s: float = 2.0, shift: float = 0.0) -> float:
    """||A^s w||_2 computed spectrally."""
    return float(np.sqrt(np.sum(spectrum(w.basis, shift) ** s * w.coefficients**2)))


def inner(u: Field, v: Field) -> float:
    """L^2 inner product, spectrally."""
    u.basis.check_same(v.basis)
    return float(u.coefficients @ v.coefficients)


def dirichlet_pairing(u: Field, v: Field, shift: float = 0.0) -> float:
    """int <grad u, grad v> + c u v computed as sum (lambda_n + c) a_n b_n."""
    u.basis.check_same(v.basis)
    return float(np.sum(spectrum(u.basis, shift) * u.coefficients * v.coefficients))


def normal_derivative(w: Field) -> np.ndarray:
    """Outward normal derivative at the boundary nodes, differentiated spectrally."""
    return w.coefficients @ w.basis.boundary_matrix


def boundary_flux(u: Field, v: Field) -> float:
    """int over the boundary of ((x - x0) . nu) d_nu u d_nu v."""
    u.basis.check_same(v.basis)
    basis = u.basis
    return float(np.sum(basis.boundary_weights * basis.boundary_moment * normal_derivative(u) * normal_derivative(v)))
