"""Ground states through the dual functional.

In the variables f = |u|^{p-1} u, g = |v|^{q-1} v the energy becomes

    Phi(f, g) = A(f, g) - B(f, g),

with A the convex Lebesgue part and B = int |x|^alpha f K(|x|^beta g). Along the
fiber (t f, t^kappa g), kappa = q(p+1)/(p(q+1)), both parts are pure powers of t,
so the maximum over the fiber is explicit. The solver minimizes that maximum by
alternating mirror steps on f and g.
"""
import logging

import numpy as np

from hamsys import settings
from hamsys.exceptions import NoAscentDirectionError
from hamsys.functionals.energies import dual_coupling, dual_norm_terms, system_residual
from hamsys.functionals.models import DualPair, Framework, FrameworkConfig
from hamsys.problem.models import ExponentPair
from hamsys.problem.utils import power, require
from hamsys.solvers.utils import finish, starting_field, trace_row
from hamsys.spectral.models import Field, GridFunction
from hamsys.spectral.utils import solve_poisson

logger = logging.getLogger(__name__)


def fiber_exponents(e: ExponentPair) -> tuple[float, float, float]:
    """(a1, a2, kappa): A and B scale like t^a1 and t^a2 along the fiber."""
    a1 = (e.p + 1) / e.p
    a2 = (e.p * (e.q + 1) + e.q * (e.p + 1)) / (e.p * (e.q + 1))
    kappa = e.q * (e.p + 1) / (e.p * (e.q + 1))
    return a1, a2, kappa


def fiber_maximizer(norm_terms: float, coupling: float, e: ExponentPair) -> tuple[float, float]:
    """Maximize t -> A t^a1 - B t^a2 over t > 0.

    Args:
        norm_terms (float): A > 0.
        coupling (float): B > 0.
        e (ExponentPair): Exponents with pq > 1, so that a2 > a1.

    Returns:
        tuple[float, float]: The maximizer t0 and the maximum A t0^a1 (1 - a1/a2).

    Raises:
        ValueError: If A or B is not positive.
    """
    if norm_terms <= 0 or coupling <= 0:
        raise ValueError(f"The fiber has no interior maximum for A = {norm_terms:g}, B = {coupling:g}")
    a1, a2, _ = fiber_exponents(e)
    t0 = (a1 * norm_terms / (a2 * coupling)) ** (1 / (a2 - a1))
    return t0, norm_terms * t0**a1 * (1 - a1 / a2)


def project_to_fiber(d: DualPair, e: ExponentPair) -> tuple[DualPair, float]:
    """Move (f, g) to the maximum of Phi along its fiber.

    Returns:
        tuple[DualPair, float]: The projected pair and Phi there.

    Raises:
        ValueError: If <T(f, g), (f, g)> <= 0.
    """
    t0, value = fiber_maximizer(dual_norm_terms(d, e), dual_coupling(d, e), e)
    _, _, kappa = fiber_exponents(e)
    basis = d.basis
    return DualPair(GridFunction(basis, t0 * d.f.values), GridFunction(basis, t0**kappa * d.g.values)), value


def _fiber_value(d, e):
    if dual_coupling(d, e) <= 0:
        return None, np.inf
    return project_to_fiber(d, e)


def _blend(current, target, exponent, step):
    """Mirror step: interpolate in the primal variable, map back with |s|^{exponent-1} s."""
    return power((1 - step) * power(current, 1 / exponent) + step * target, exponent)


def _starting_pair(basis, e, cfg, initial):
    """(f(w), g(w)) for the start w, re-randomized while the coupling is not positive."""
    w = starting_field(basis, cfg, initial)
    rng = np.random.default_rng(cfg.seed + 1)
    decay = np.arange(1, basis.mode_count + 1) ** 2
    for attempt in range(settings.DUAL_RESTARTS + 1):
        d = DualPair.from_nodal(basis, power(w.nodal, e.p), power(w.nodal, e.q))
        if dual_coupling(d, e) > 0:
            if attempt:
                logger.info("Dual start re-randomized %d times", attempt)
            return d
        w = Field(basis, rng.standard_normal(basis.mode_count) / decay)
    raise NoAscentDirectionError(
        f"No start with positive coupling after {settings.DUAL_RESTARTS} restarts",
        framework=Framework.DUAL,
    )


def solve_dual(
    e: ExponentPair,
    basis,
    cfg: FrameworkConfig | None = None,
    initial: Field | None = None,
):
    """Minimize the fiber maximum of Phi by alternating mirror descent.

    The g-block moves v = g^{1/q} toward K(|x|^alpha f), the f-block moves
    u = f^{1/p} toward K(|x|^beta g); each candidate is projected to its fiber
    and accepted when the projected value does not increase. Full steps are the
    Gauss-Seidel fixed point iteration, so a fixed point is a critical point of Phi.

    Args:
        e (ExponentPair): The exponents; (H3) must hold.
        basis (SpectralBasis): The Galerkin basis.
        cfg (FrameworkConfig): Tolerance, iteration cap, step floor and seed.
        initial (Field): Start from (f(w), g(w)) of this field instead of phi_1.

    Returns:
        FrameworkResult: (u, v) = (K(|x|^beta g), K(|x|^alpha f)) and c = Phi(f, g).

    Raises:
        UnsupportedRegimeError: If (H3) fails.
        NoAscentDirectionError: If no start with positive coupling is found.
    """
    cfg = cfg or FrameworkConfig(framework=Framework.DUAL)
    e = e.for_dimension(basis.domain.dimension)
    require(e, "H3", "The dual method")
    rho_alpha, rho_beta = basis.weight(e.alpha), basis.weight(e.beta)

    d, level = project_to_fiber(_starting_pair(basis, e, cfg, initial), e)
    trace = []
    iteration = 0
    u = v = None
    for iteration in range(1, cfg.iteration_cap + 1):
        steps = []
        for block in ("g", "f"):
            if block == "g":
                target = solve_poisson(rho_alpha * d.f.values, basis, e.potential).nodal
                current, exponent = d.g.values, e.q
            else:
                target = solve_poisson(rho_beta * d.g.values, basis, e.potential).nodal
                current, exponent = d.f.values, e.p
            step = 1.0
            while step >= cfg.min_step:
                values = GridFunction(basis, _blend(current, target, exponent, step))
                candidate = DualPair(d.f, values) if block == "g" else DualPair(values, d.g)
                projected, value = _fiber_value(candidate, e)
                if value <= level * (1 + settings.ROUNDING_SLACK):
                    d, level = projected, value
                    steps.append(step)
                    break
                step /= 2

        u = solve_poisson(rho_beta * d.g.values, basis, e.potential)
        v = solve_poisson(rho_alpha * d.f.values, basis, e.potential)
        residual = system_residual(u, v, e)
        trace.append(trace_row(iteration, level, residual, max(steps, default=0.0)))
        if residual <= cfg.tolerance:
            break
        if not steps:
            logger.warning("Dual descent stalled at residual %.3e", residual)
            break

    return finish(
        Framework.DUAL,
        e,
        u,
        v,
        level,
        iteration,
        trace,
        cfg,
        {
            "norm_terms": dual_norm_terms(d, e),
            "coupling": dual_coupling(d, e),
            "identity_gap": identity_gap(d, level, e),
            "inversion_consistency": _relative_gap(power(d.f.values, 1 / e.p), u.nodal, basis),
        },
    )


def identity_gap(d: DualPair, level: float, e: ExponentPair) -> float:
    """|Phi - (pq-1)/(p(q+1)+q(p+1)) A| / |Phi| at a point of the fiber maxima."""
    expected = (e.pq - 1) / (e.p * (e.q + 1) + e.q * (e.p + 1)) * dual_norm_terms(d, e)
    return abs(level - expected) / abs(level)


def _relative_gap(values, reference, basis):
    scale = np.sqrt(basis.integrate(reference**2))
    return float(np.sqrt(basis.integrate((values - reference) ** 2)) / scale) if scale else 0.0
