"""Ground states through the Lyapunov-Schmidt type reduction.

The reduced functional J_lam has mountain pass geometry, so its ground level is
the infimum over directions w of max_t J_lam(t w). Each outer step moves w along
the preconditioned gradient -Lambda^{-1} G / (2 lam) and returns to the maximum
of the new ray; an Armijo test on the ray maxima keeps the level monotone.
"""
import logging

import numpy as np

from hamsys import settings
from hamsys.exceptions import WindowError
from hamsys.functionals.energies import system_residual
from hamsys.functionals.models import Framework, FrameworkConfig
from hamsys.functionals.reduction import ray_maximum
from hamsys.problem.models import ExponentPair
from hamsys.problem.utils import require
from hamsys.solvers.utils import finish, starting_field, trace_row
from hamsys.spectral.models import Field
from hamsys.spectral.utils import spectrum

logger = logging.getLogger(__name__)


def solve_ls_reduction(
    e: ExponentPair,
    basis,
    cfg: FrameworkConfig | None = None,
    lam: float | None = None,
    initial: Field | None = None,
):
    """Minimize the ray maxima of the reduced functional J_lam.

    Args:
        e (ExponentPair): The exponents; (H4) must hold.
        basis (SpectralBasis): The Galerkin basis.
        cfg (FrameworkConfig): Tolerances, caps, ray window and the inner solver settings.
        lam (float): The reduction parameter; defaults to ``cfg.lam``.
        initial (Field): Starting direction instead of phi_1.

    Returns:
        FrameworkResult: The pair (lam w + Psi, w - Psi/lam) and c = J_lam(w).

    Raises:
        UnsupportedRegimeError: If (H4) fails.
        WindowError: If the first ray has no maximum inside ``cfg.ray_window``.
        InnerSolverError: If an anti-diagonal maximization fails.
    """
    cfg = cfg or FrameworkConfig(framework=Framework.LS_REDUCTION)
    lam = cfg.lam if lam is None else lam
    e = e.for_dimension(basis.domain.dimension)
    require(e, "H4", "The Lyapunov-Schmidt reduction")
    inner = {"tolerance": cfg.inner_tolerance, "max_iter": cfg.inner_max_iter, "min_step": cfg.min_step}
    preconditioner = 2 * lam * spectrum(basis, e.potential)

    t, state = ray_maximum(starting_field(basis, cfg, initial), e, lam, cfg.ray_window, **inner)
    trace = []
    inner_iterations = state.iterations
    iteration = 0
    for iteration in range(1, cfg.iteration_cap + 1):
        residual = system_residual(state.u, state.v, e)
        if residual <= cfg.tolerance:
            trace.append(trace_row(iteration, state.value, residual, 0.0))
            break
        gradient = state.gradient.coefficients
        direction = Field(basis, -gradient / preconditioner)
        slope = float(gradient @ direction.coefficients)

        step = 1.0
        accepted = None
        while step >= cfg.min_step:
            candidate = state.w + step * direction
            try:
                scale, following = ray_maximum(candidate, e, lam, cfg.ray_window, guess=1.0, **inner)
            except WindowError:
                step /= 2
                continue
            bound = state.value + settings.ARMIJO_FRACTION * step * slope + settings.ROUNDING_SLACK * abs(state.value)
            if following.value <= bound:
                accepted = scale, following
                break
            step /= 2

        if accepted is None:
            trace.append(trace_row(iteration, state.value, residual, 0.0))
            logger.warning("Reduced descent stalled at residual %.3e", residual)
            break
        t, state = accepted
        inner_iterations += state.iterations
        trace.append(trace_row(iteration, state.value, residual, step))

    return finish(
        Framework.LS_REDUCTION,
        e,
        state.u,
        state.v,
        state.value,
        iteration,
        trace,
        cfg,
        {
            "lam": lam,
            "ray_parameter": t,
            "inner_iterations": inner_iterations,
            "w_norm": float(np.linalg.norm(state.w.coefficients)),
        },
    )
