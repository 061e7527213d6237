"""Ground states through the reduction by inversion.

Eliminating v turns the system into a fourth-order problem whose ground states
realize the best constant

    alpha = inf int |x|^{-beta/q} |Lu|^{(q+1)/q} / ||u||_{p+1,alpha}^{(q+1)/q},   L = -Delta + c.

Writing Lu = |x|^beta g, the quotient becomes int |x|^beta |g|^{(q+1)/q} over
||K(|x|^beta g)||^{(q+1)/q}, and the normalized system power iteration

    u <- K(|x|^beta g(K(|x|^alpha f(u))))

does not increase it (two Hölder inequalities per step). This is the only
solver that covers the sublinear regime pq < 1.
"""
import logging

import numpy as np

from hamsys import settings
from hamsys.exceptions import UnsupportedRegimeError
from hamsys.functionals.energies import fourth_order_terms
from hamsys.functionals.models import Framework, FrameworkConfig
from hamsys.problem.models import ExponentPair
from hamsys.problem.utils import power, power_inverse, require
from hamsys.solvers.utils import finish, starting_field, trace_row
from hamsys.spectral.models import Field
from hamsys.spectral.utils import e_norm, lp_norm, solve_poisson, spectrum

logger = logging.getLogger(__name__)


def t_of_u(energy_norm: float, lebesgue_norm: float, e: ExponentPair) -> float:
    """The unique critical point t(u) of t -> J(t u).

    Args:
        energy_norm (float): int |x|^{-beta/q} |Lu|^{(q+1)/q}.
        lebesgue_norm (float): int |x|^alpha |u|^{p+1}.
        e (ExponentPair): The exponents, pq != 1.
    """
    return (energy_norm / lebesgue_norm) ** (e.q / (e.pq - 1))


def level_from_alpha(alpha: float, e: ExponentPair) -> float:
    """c = (pq - 1)/((p+1)(q+1)) alpha^{q(p+1)/(pq-1)}."""
    return (e.pq - 1) / ((e.p + 1) * (e.q + 1)) * alpha ** (e.q * (e.p + 1) / (e.pq - 1))


def inversion_quotient(u: Field, e: ExponentPair) -> float:
    """int |x|^{-beta/q} |Lu|^{(q+1)/q} / ||u||_{p+1,alpha}^{(q+1)/q}; homogeneous of degree 0."""
    numerator, denominator = fourth_order_terms(u, e)
    return numerator / denominator ** ((e.q + 1) / (e.q * (e.p + 1)))


def inversion_gap(u: Field, v: Field, e: ExponentPair) -> float:
    """Relative L^2 gap between v and the inversion formula g^{-1}(Lu / |x|^beta).

    Only nodes with a positive weight enter.
    """
    basis = u.basis
    weight = basis.weight(e.beta)
    mask = weight > 0
    operator = basis.synthesize(spectrum(basis, e.potential) * u.coefficients)
    formula = power_inverse(operator[mask] / weight[mask], e.q)
    scale = np.sqrt(basis.weights[mask] @ v.nodal[mask] ** 2)
    if scale == 0:
        return 0.0
    return float(np.sqrt(basis.weights[mask] @ (formula - v.nodal[mask]) ** 2) / scale)


def solve_inversion(
    e: ExponentPair,
    basis,
    cfg: FrameworkConfig | None = None,
    initial: Field | None = None,
):
    """Minimize the inversion quotient by normalized system power iteration.

    Args:
        e (ExponentPair): The exponents; (H1) must hold and pq != 1.
        basis (SpectralBasis): The Galerkin basis.
        cfg (FrameworkConfig): Tolerance and iteration cap.
        initial (Field): Start instead of the first eigenfunction.

    Returns:
        FrameworkResult: With ``diagnostics`` holding ``alpha``, ``t``,
        ``quotients`` (one per iteration) and ``inversion_gap``.

    Raises:
        UnsupportedRegimeError: If (H1) fails or pq = 1.
    """
    cfg = cfg or FrameworkConfig(framework=Framework.INVERSION)
    e = e.for_dimension(basis.domain.dimension)
    require(e, "H1", "The inversion method")
    if e.pq == 1:
        raise UnsupportedRegimeError(
            f"The inversion method needs pq != 1; at pq = 1 the problem is an eigenvalue problem, got {e}",
            "pq=1",
        )
    rho_alpha, rho_beta = basis.weight(e.alpha), basis.weight(e.beta)
    conjugate = (e.q + 1) / e.q

    u = starting_field(basis, cfg, initial)
    u = u / lp_norm(u, e.p + 1, e.alpha)
    v = solve_poisson(rho_alpha * power(u.nodal, e.p), basis, e.potential)
    quotients = []
    trace = []
    alpha = t = np.nan
    iteration = 0
    for iteration in range(1, cfg.iteration_cap + 1):
        g = power(v.nodal, e.q)
        w = solve_poisson(rho_beta * g, basis, e.potential)
        norm = lp_norm(w, e.p + 1, e.alpha)
        alpha = basis.integrate(rho_beta * np.abs(g) ** conjugate) / norm**conjugate
        if quotients and alpha > quotients[-1] * (1 + settings.ROUNDING_SLACK):
            logger.warning("Inversion quotient increased from %.15g to %.15g", quotients[-1], alpha)
        quotients.append(alpha)

        following = w / norm
        step = e_norm(following - u, 1, e.potential) / e_norm(u, 1, e.potential)
        u = following
        v = solve_poisson(rho_alpha * power(u.nodal, e.p), basis, e.potential)

        t = alpha ** (e.q / (e.pq - 1))
        residual = _scaled_residual(u, v, t, e)
        trace.append(trace_row(iteration, level_from_alpha(alpha, e), residual, step))
        if residual <= cfg.tolerance:
            break

    u_star, v_star = t * u, t**e.p * v
    return finish(
        Framework.INVERSION,
        e,
        u_star,
        v_star,
        level_from_alpha(alpha, e),
        iteration,
        trace,
        cfg,
        {
            "alpha": alpha,
            "t": t,
            "quotients": quotients,
            "inversion_gap": inversion_gap(u_star, v_star, e),
        },
    )


def _scaled_residual(u, v, t, e):
    """System residual of (t u, t^p v) where v = K(|x|^alpha f(u))."""
    basis = u.basis
    image = solve_poisson(basis.weight(e.beta) * power(v.nodal, e.q), basis, e.potential)
    # u-equation defect of the scaled pair, divided by t; the v-equation holds exactly
    defect = e_norm(u - t ** (e.pq - 1) * image, 1, e.potential)
    scale = np.hypot(e_norm(u, 1, e.potential), t ** (e.p - 1) * e_norm(v, 1, e.potential))
    return defect / scale
