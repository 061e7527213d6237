"""The reduced functional obtained by maximizing the energy over anti-diagonal directions.

For w fixed, psi ranges over the directions (psi, -psi/lam) and

    J_lam(w) = max_psi I(lam w + psi, w - psi/lam).

The inner problem is strictly concave when p, q > 1 and is solved by damped
Newton; gradients of J_lam follow from the envelope identity.
"""
import logging

import numpy as np
from scipy import linalg, optimize

from hamsys import settings
from hamsys.exceptions import InnerSolverError, WindowError
from hamsys.functionals.energies import hamiltonian
from hamsys.functionals.models import Framework, ReducedState
from hamsys.problem.models import ExponentPair
from hamsys.problem.utils import power, power_derivative, require
from hamsys.spectral.models import Field
from hamsys.spectral.utils import spectrum

logger = logging.getLogger(__name__)


def _objective(psi, w, e, lam, basis, eigenvalues):
    u = lam * w + psi
    v = w - psi / lam
    return float(np.sum(eigenvalues * u * v)) - hamiltonian(basis.synthesize(u), basis.synthesize(v), basis, e)


def solve_inner_max(
    w: Field,
    e: ExponentPair,
    lam: float = 1.0,
    tolerance: float = settings.INNER_TOLERANCE,
    max_iter: int = settings.INNER_MAX_ITER,
    min_step: float = settings.MIN_STEP,
    initial: Field | None = None,
) -> tuple[Field, int]:
    """Maximize psi -> I(lam w + psi, w - psi/lam) by damped Newton.

    Convergence is measured by the H^{-1} norm of the anti-diagonal gradient
    relative to the H^{-1} norms of the four terms it is made of.

    Returns:
        tuple[Field, int]: The maximizer and the number of Newton steps taken.

    Raises:
        UnsupportedRegimeError: If p <= 1 or q <= 1.
        InnerSolverError: If the gradient does not fall below ``tolerance`` within ``max_iter`` steps.
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    basis = w.basis
    require(e.for_dimension(basis.domain.dimension), "H4", "The reduction")
    eigenvalues = spectrum(basis, e.potential)
    rho_alpha, rho_beta = basis.weight(e.alpha), basis.weight(e.beta)
    psi = np.zeros(basis.mode_count) if initial is None else initial.coefficients.copy()
    trace = []

    for iteration in range(max_iter + 1):
        u = lam * w.coefficients + psi
        v = w.coefficients - psi / lam
        u_nodal, v_nodal = basis.synthesize(u), basis.synthesize(v)
        source_u = basis.project(rho_alpha * power(u_nodal, e.p))
        source_v = basis.project(rho_beta * power(v_nodal, e.q))
        # gradient measured in H^{-1} against the size of its four terms
        terms = [eigenvalues * v, source_u, eigenvalues * u / lam, source_v / lam]
        scale = sum(np.sqrt(np.sum(term**2 / eigenvalues)) for term in terms)
        if scale == 0:
            return Field(basis, psi), iteration
        gradient = terms[0] - terms[1] - terms[2] + terms[3]
        measure = np.sqrt(np.sum(gradient**2 / eigenvalues)) / scale
        trace.append((iteration, measure))
        if measure <= tolerance:
            return Field(basis, psi), iteration
        if iteration == max_iter:
            break

        curvature = basis.weights * (
            rho_alpha * power_derivative(u_nodal, e.p) + rho_beta * power_derivative(v_nodal, e.q) / lam**2
        )
        hessian = -2 * np.diag(eigenvalues) / lam - (basis.matrix * curvature) @ basis.matrix.T
        direction = linalg.solve(-hessian, gradient, assume_a="pos")

        current = _objective(psi, w.coefficients, e, lam, basis, eigenvalues)
        step = 1.0
        while step >= min_step:
            candidate = psi + step * direction
            if _objective(candidate, w.coefficients, e, lam, basis, eigenvalues) >= current:
                psi = candidate
                break
            step /= 2
        else:
            # no ascent left at double precision
            if measure <= 1e3 * tolerance:
                return Field(basis, psi), iteration
            raise InnerSolverError(
                f"Inner line search stalled at gradient {measure:.3e}",
                framework=Framework.LS_REDUCTION,
                trace=trace,
            )

    raise InnerSolverError(
        f"Inner maximization did not converge in {max_iter} steps (gradient {trace[-1][1]:.3e})",
        framework=Framework.LS_REDUCTION,
        trace=trace,
    )


def reduce(w: Field, e: ExponentPair, lam: float = 1.0, initial: Field | None = None, **inner) -> ReducedState:
    """Evaluate the reduced functional, its maximizer and its gradient at w."""
    psi, iterations = solve_inner_max(w, e, lam, initial=initial, **inner)
    basis = w.basis
    u = lam * w + psi
    v = w - psi / lam
    eigenvalues = spectrum(basis, e.potential)
    value = float(np.sum(eigenvalues * u.coefficients * v.coefficients)) - hamiltonian(u.nodal, v.nodal, basis, e)
    gradient = (
        2 * lam * eigenvalues * w.coefficients
        - lam * basis.project(basis.weight(e.alpha) * power(u.nodal, e.p))
        - basis.project(basis.weight(e.beta) * power(v.nodal, e.q))
    )
    return ReducedState(w, psi, u, v, lam, value, Field(basis, gradient), iterations)


def energy_reduced(w: Field, e: ExponentPair, lam: float = 1.0, **inner) -> float:
    """J_lam(w) = I(lam w + Psi, w - Psi/lam)."""
    return reduce(w, e, lam, **inner).value


def gradient_reduced(w: Field, e: ExponentPair, lam: float = 1.0, **inner) -> Field:
    """Coefficient gradient of J_lam: 2 lam Lambda w - lam P(|x|^alpha f(u)) - P(|x|^beta g(v))."""
    return reduce(w, e, lam, **inner).gradient


def ray_maximum(
    w: Field,
    e: ExponentPair,
    lam: float = 1.0,
    window: tuple[float, float] = settings.RAY_WINDOW,
    guess: float | None = None,
    **inner,
) -> tuple[float, ReducedState]:
    """Maximize t -> J_lam(t w) over ``window``.

    Without a ``guess`` the whole window is searched on log t by bounded Brent
    (golden section with parabolic steps); with one, a bracket is grown around
    it. The estimate is polished by a Brent root search on the envelope
    derivative t -> J_lam'(t w) w.

    Returns:
        tuple[float, ReducedState]: The maximizing t and the reduced state at t w.

    Raises:
        WindowError: If the maximum is not attained inside the window.
    """
    if w.is_zero():
        raise ValueError("The ray direction must be nonzero")
    low, high = np.log(window[0]), np.log(window[1])
    states = {}

    def state(log_t):
        if log_t not in states:
            initial = None
            if states:
                nearest = min(states, key=lambda key: abs(key - log_t))
                initial = states[nearest].psi * float(np.exp(log_t - nearest))
            states[log_t] = reduce(float(np.exp(log_t)) * w, e, lam, initial=initial, **inner)
        return states[log_t]

    def slope(log_t):
        return float(state(log_t).gradient.coefficients @ w.coefficients)

    if guess is None:
        if slope(low) <= 0 or slope(high) >= 0:
            raise WindowError(
                f"sup of the reduced energy along the ray is not attained in {window}", framework=Framework.LS_REDUCTION
            )
        coarse = optimize.minimize_scalar(
            lambda log_t: -state(log_t).value, bounds=(low, high), method="bounded", options={"xatol": 1e-2}
        )
        center = float(coarse.x)
    else:
        center = float(np.clip(np.log(guess), low, high))

    left, right, width = max(center - 0.05, low), min(center + 0.05, high), 0.05
    while slope(left) <= 0 or slope(right) >= 0:
        if (slope(left) <= 0 and left <= low) or (slope(right) >= 0 and right >= high):
            raise WindowError(
                f"sup of the reduced energy along the ray is not attained in {window}", framework=Framework.LS_REDUCTION
            )
        width *= 4
        if slope(left) <= 0:
            left = max(center - width, low)
        if slope(right) >= 0:
            right = min(center + width, high)
    log_t = optimize.brentq(slope, left, right, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    return float(np.exp(log_t)), state(log_t)


def ls_saddle_level(u: Field, v: Field, e: ExponentPair, **inner) -> float:
    """sup over t >= 0 and anti-diagonal phi of I(t (u, v) + (phi, -phi)).

    The anti-diagonal part of t (u, v) is absorbed into phi, so the supremum
    is the ray maximum of the reduced functional along (u + v)/2.
    """
    u.basis.check_same(v.basis)
    _, top = ray_maximum((u + v) / 2, e, 1.0, **inner)
    logger.debug("Saddle level %.12g", top.value)
    return top.value
