"""Helpers shared by the Galerkin solvers."""
import logging

import numpy as np

from hamsys.functionals.energies import energy_fractional, solution_pair
from hamsys.functionals.models import FrameworkConfig
from hamsys.solvers.models import FrameworkResult, TraceRow
from hamsys.spectral.models import Field

logger = logging.getLogger(__name__)


def starting_field(basis, cfg: FrameworkConfig, initial: Field | None = None) -> Field:
    """The first iterate: ``initial`` when given, else the positive first eigenfunction.

    A nonzero ``cfg.perturbation`` adds a seeded random perturbation of that
    relative size with coefficients decaying like 1/n^2.
    """
    start = initial if initial is not None else Field.mode(basis, 1)
    basis.check_same(start.basis)
    if cfg.perturbation:
        rng = np.random.default_rng(cfg.seed)
        noise = rng.standard_normal(basis.mode_count) / np.arange(1, basis.mode_count + 1) ** 2
        noise *= cfg.perturbation * np.linalg.norm(start.coefficients) / np.linalg.norm(noise)
        start = Field(basis, start.coefficients + noise)
    return start


def sign_normalized(u: Field, v: Field) -> tuple[Field, Field]:
    """(u, v) or (-u, -v), whichever has int u >= 0."""
    if u.basis.integrate(u.nodal) < 0:
        return -u, -v
    return u, v


def finish(framework, e, u, v, level, iterations, trace, cfg, diagnostics=None) -> FrameworkResult:
    """Assemble a result and log its outcome.

    The diagnostics gain ``fractional_energy``, I_s at the pair with s = ``cfg.split``.
    """
    u, v = sign_normalized(u, v)
    pair = solution_pair(u, v, e, framework)
    diagnostics = {**(diagnostics or {}), "fractional_energy": float(energy_fractional(u, v, e, cfg.split))}
    converged = pair.residual <= cfg.tolerance
    result = FrameworkResult(
        framework=framework,
        level=level,
        solution=pair,
        iterations=iterations,
        trace=trace,
        converged=converged,
        tolerance=cfg.tolerance,
        diagnostics=diagnostics,
    )
    if converged:
        logger.info("%s converged: c = %.12g after %d iterations", framework.value, level, iterations)
    else:
        logger.warning(
            "%s did not converge: c = %.12g, residual %.3e after %d iterations",
            framework.value,
            level,
            pair.residual,
            iterations,
        )
    return result


def trace_row(iteration, energy, residual, step) -> TraceRow:
    logger.debug("iteration %d: energy %.15g residual %.3e step %.3g", iteration, energy, residual, step)
    return TraceRow(iteration, float(energy), float(residual), float(step))
