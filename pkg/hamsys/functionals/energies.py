"""Energy functionals of the system and their gradients in coefficient space.

Nonlinear terms are evaluated at the quadrature nodes and projected back onto
the eigenbasis. K denotes the Galerkin inverse of -Delta + c.
"""
import numpy as np

from hamsys.functionals.models import DualPair, Framework, SolutionPair
from hamsys.problem.models import ExponentPair
from hamsys.problem.utils import power, power_primitive
from hamsys.spectral.models import Field, GridFunction
from hamsys.spectral.utils import apply_frac, dirichlet_pairing, e_norm, inner, solve_poisson, spectrum


def hamiltonian(u_nodal: np.ndarray, v_nodal: np.ndarray, basis, e: ExponentPair) -> float:
    """int |x|^alpha |u|^{p+1}/(p+1) + |x|^beta |v|^{q+1}/(q+1)."""
    return basis.integrate(
        basis.weight(e.alpha) * power_primitive(u_nodal, e.p) + basis.weight(e.beta) * power_primitive(v_nodal, e.q)
    )


def energy_direct(u: Field, v: Field, e: ExponentPair) -> float:
    """I(u, v) = int <grad u, grad v> + c u v - int H(x, u, v)."""
    u.basis.check_same(v.basis)
    return dirichlet_pairing(u, v, e.potential) - hamiltonian(u.nodal, v.nodal, u.basis, e)


def energy_fractional(u: Field, v: Field, e: ExponentPair, s: float) -> float:
    """I_s(u, v) = int A^s u A^{2-s} v - int H, with A^s = (-Delta + c)^{s/2}.

    Raises:
        ValueError: If s lies outside (0, 2).
    """
    if not 0 < s < 2:
        raise ValueError(f"The fractional split must lie in (0, 2), got {s}")
    u.basis.check_same(v.basis)
    quadratic = inner(apply_frac(u, s, e.potential), apply_frac(v, 2 - s, e.potential))
    return quadratic - hamiltonian(u.nodal, v.nodal, u.basis, e)


def dual_norm_terms(d: DualPair, e: ExponentPair) -> float:
    """The convex part A = int |x|^alpha p/(p+1) |f|^{(p+1)/p} + |x|^beta q/(q+1) |g|^{(q+1)/q}."""
    basis = d.basis
    return basis.integrate(
        basis.weight(e.alpha) * power_primitive(d.f.values, 1 / e.p)
        + basis.weight(e.beta) * power_primitive(d.g.values, 1 / e.q)
    )


def dual_coupling(d: DualPair, e: ExponentPair) -> float:
    """B = int |x|^alpha f K(|x|^beta g), half of <T(f, g), (f, g)>; symmetric in the two slots."""
    basis = d.basis
    weighted_f = basis.project(basis.weight(e.alpha) * d.f.values)
    weighted_g = basis.project(basis.weight(e.beta) * d.g.values)
    return float(np.sum(weighted_f * weighted_g / spectrum(basis, e.potential)))


def energy_dual(d: DualPair, e: ExponentPair) -> float:
    """Phi(f, g) = A - B, with the Hénon weights inside the Lebesgue norms."""
    return dual_norm_terms(d, e) - dual_coupling(d, e)


def energy_dual_gradient(d: DualPair, e: ExponentPair) -> DualPair:
    """L^2 gradient of Phi at the nodes: dPhi[df, dg] = int grad_f df + grad_g dg."""
    basis = d.basis
    rho_alpha, rho_beta = basis.weight(e.alpha), basis.weight(e.beta)
    v = solve_poisson(rho_alpha * d.f.values, basis, e.potential)
    u = solve_poisson(rho_beta * d.g.values, basis, e.potential)
    return DualPair(
        GridFunction(basis, rho_alpha * (power(d.f.values, 1 / e.p) - u.nodal)),
        GridFunction(basis, rho_beta * (power(d.g.values, 1 / e.q) - v.nodal)),
    )


def _inverse_weight(basis, beta: float, q: float) -> np.ndarray:
    """|x|^{-beta/q} at the nodes, set to 0 at a node sitting on the centre."""
    if beta == 0:
        return np.ones(basis.node_count)
    with np.errstate(divide="ignore"):
        return np.where(basis.radius > 0, basis.radius ** (-beta / q), 0.0)


def fourth_order_terms(u: Field, e: ExponentPair) -> tuple[float, float]:
    """(int |x|^{-beta/q} |Lu|^{(q+1)/q}, int |x|^alpha |u|^{p+1}) with L = -Delta + c."""
    basis = u.basis
    operator = basis.synthesize(spectrum(basis, e.potential) * u.coefficients)
    return (
        basis.integrate(_inverse_weight(basis, e.beta, e.q) * np.abs(operator) ** ((e.q + 1) / e.q)),
        basis.integrate(basis.weight(e.alpha) * np.abs(u.nodal) ** (e.p + 1)),
    )


def energy_fourth_order(u: Field, e: ExponentPair) -> float:
    """J(u) = q/(q+1) int |x|^{-beta/q} |Lu|^{(q+1)/q} - 1/(p+1) int |x|^alpha |u|^{p+1}."""
    numerator, denominator = fourth_order_terms(u, e)
    return e.q / (e.q + 1) * numerator - denominator / (e.p + 1)


def energy_fourth_order_gradient(u: Field, e: ExponentPair) -> Field:
    """Gradient of J with respect to the coefficients of u."""
    basis = u.basis
    eigenvalues = spectrum(basis, e.potential)
    operator = basis.synthesize(eigenvalues * u.coefficients)
    quasilinear = basis.project(_inverse_weight(basis, e.beta, e.q) * power(operator, 1 / e.q))
    source = basis.project(basis.weight(e.alpha) * power(u.nodal, e.p))
    return Field(basis, eigenvalues * quasilinear - source)


def galerkin_images(u: Field, v: Field, e: ExponentPair) -> tuple[Field, Field]:
    """(K(|x|^beta g(v)), K(|x|^alpha f(u))), the right-hand sides of the fixed-point form."""
    basis = u.basis
    return (
        solve_poisson(basis.weight(e.beta) * power(v.nodal, e.q), basis, e.potential),
        solve_poisson(basis.weight(e.alpha) * power(u.nodal, e.p), basis, e.potential),
    )


def system_residual(u: Field, v: Field, e: ExponentPair) -> float:
    """Relative H^1 norm of the Galerkin defect (u - K(|x|^beta g(v)), v - K(|x|^alpha f(u))).

    Zero for the zero pair.
    """
    u.basis.check_same(v.basis)
    image_u, image_v = galerkin_images(u, v, e)
    scale = np.hypot(e_norm(u, 1, e.potential), e_norm(v, 1, e.potential))
    if scale == 0:
        return 0.0
    defect = np.hypot(e_norm(u - image_u, 1, e.potential), e_norm(v - image_v, 1, e.potential))
    return float(defect / scale)


def solution_pair(u: Field, v: Field, e: ExponentPair, provenance: Framework) -> SolutionPair:
    """Bundle a pair with its energy and system residual."""
    return SolutionPair(
        u=u,
        v=v,
        exponents=e,
        energy=energy_direct(u, v, e),
        residual=system_residual(u, v, e),
        provenance=provenance,
    )
