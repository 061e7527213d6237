"""The Hénon symmetry-breaking probe and growth fits of the ground levels.

On the disk the probe compares the least level among radial functions with the
ground level of the full problem. The radial level comes from the inversion
method on the m = 0 Bessel sub-basis; the full one from the same method on the
whole basis, started off the radial subspace by a seeded perturbation, then
restarted from its part symmetric about its best axis before the foliated
deficit is measured.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from hamsys import settings
from hamsys.exceptions import DomainError
from hamsys.functionals.models import Framework, FrameworkConfig
from hamsys.problem.models import ExponentPair
from hamsys.problem.utils import require
from hamsys.solvers.inversion import solve_inversion
from hamsys.spectral.bases import build_basis
from hamsys.spectral.models import DomainKind
from hamsys.symmetry.models import BreakingRow, GrowthFit
from hamsys.symmetry.polarization import best_axis, even_part, rotate, symmetry_report

logger = logging.getLogger(__name__)


def radial_basis(basis):
    """The radial sub-basis spanning the m = 0 modes of ``basis``."""
    count = sum(mode.is_radial for mode in basis.modes)
    return build_basis(basis.domain, max(count, 1), radial_only=True, quadrature_factor=basis.quadrature_factor)


def symmetry_breaking_probe(e: ExponentPair, basis, cfg: FrameworkConfig | None = None) -> BreakingRow:
    """Radial and full ground levels on the disk and the symmetry of the full minimizer.

    The two solves run concurrently. Breaking is reported when the full level
    lies below the radial one by more than ``settings.BREAKING_MARGIN``.

    Args:
        e (ExponentPair): Exponents with alpha, beta >= 0 satisfying (H3).
        basis (SpectralBasis): A full basis on a disk.
        cfg (FrameworkConfig): Inversion settings; a zero perturbation is replaced
            by ``settings.PROBE_PERTURBATION`` for the full solve.

    Raises:
        DomainError: Off the disk.
        UnsupportedRegimeError: If (H3) fails.
        ConvergenceError: Propagated from either solve.
    """
    if basis.domain.kind is not DomainKind.DISK or basis.radial_only:
        raise DomainError(f"The probe needs a full basis on a disk, got {basis!r}")
    e = e.for_dimension(2)
    require(e, "H3", "The symmetry-breaking probe")
    cfg = cfg or FrameworkConfig(framework=Framework.INVERSION)
    full_cfg = cfg if cfg.perturbation else replace(cfg, perturbation=settings.PROBE_PERTURBATION)

    with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
        radial = executor.submit(solve_inversion, e, radial_basis(basis), cfg)
        full = executor.submit(solve_inversion, e, basis, full_cfg)
        radial, full = radial.result(), full.result()

    full, frame_axis, axis = polish(e, full, cfg)
    report = symmetry_report(full.u, axis=frame_axis)
    row = BreakingRow(
        alpha=e.alpha,
        beta=e.beta,
        c_rad=radial.level,
        c_full=full.level,
        foliated_deficit=report.foliated_deficit,
        radial_deficit=report.radial_deficit,
        axis=tuple(float(x) for x in axis),
        residual=full.solution.residual,
    )
    logger.info(
        "alpha=%g beta=%g: c_rad = %.10g, c_full = %.10g, breaking %s",
        e.alpha,
        e.beta,
        row.c_rad,
        row.c_full,
        row.breaking,
    )
    return row


def polish(e: ExponentPair, full, cfg: FrameworkConfig):
    """Restart the full solve from its part symmetric about its best axis, turned onto e_1.

    The iteration keeps the symmetry about e_1 exactly, so the restart settles
    on the minimizer symmetric about that axis. The restart replaces ``full``
    unless its level is higher.

    Returns:
        tuple[FrameworkResult, np.ndarray, np.ndarray]: The result, the axis in its frame
        (e_1 after a restart) and the axis in the original frame.
    """
    axis = best_axis(full.u)
    start = even_part(rotate(full.u, np.arctan2(axis[1], axis[0])))
    restarted = solve_inversion(e, full.basis, replace(cfg, perturbation=0.0), initial=start)
    logger.info(
        "Restart about axis %s: c = %.10g (was %.10g), residual %.3e",
        axis,
        restarted.level,
        full.level,
        restarted.solution.residual,
    )
    if restarted.level > full.level + settings.TOLERANCES["level"] * abs(full.level):
        logger.warning("The symmetric restart raised the level; keeping the unrestricted minimizer")
        return full, axis, axis
    return restarted, np.array([1.0, 0.0]), axis


def growth_exponents(e: ExponentPair, beta_grows: bool = True) -> tuple[float, float]:
    """Reference growth exponents in alpha of the radial level and of the full-level upper bound.

    The radial level grows like alpha^{(p+2)(q+1)/(pq-1)} (1 + beta^{(p+1)/(pq-1)});
    with ``beta_grows`` the sweep moves beta together with alpha. The full level
    is at most of order alpha^{(2(p+1)(q+1) - N(pq-1))/(pq-1)}.
    """
    pq = e.pq
    radial = (e.p + 2) * (e.q + 1) / (pq - 1)
    if beta_grows:
        radial += (e.p + 1) / (pq - 1)
    full = (2 * (e.p + 1) * (e.q + 1) - e.dimension * (pq - 1)) / (pq - 1)
    return radial, full


def fit_growth(weights, levels, reference: float = np.nan) -> GrowthFit:
    """Least-squares slope of log c against log alpha over the positive weights.

    Raises:
        ValueError: With fewer than two positive weights with positive levels.
    """
    weights = np.asarray(weights, dtype=float)
    levels = np.asarray(levels, dtype=float)
    mask = (weights > 0) & (levels > 0)
    if np.count_nonzero(mask) < 2:
        raise ValueError("A growth fit needs at least two positive weights")
    slope, intercept = np.polyfit(np.log(weights[mask]), np.log(levels[mask]), 1)
    return GrowthFit(float(slope), float(intercept), float(reference), int(np.count_nonzero(mask)))
