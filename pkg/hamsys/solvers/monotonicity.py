"""Monotonicity of the ground level under domain inclusion."""
import logging

from hamsys import settings
from hamsys.exceptions import DomainError
from hamsys.functionals.models import Framework, FrameworkConfig
from hamsys.problem.models import ExponentPair
from hamsys.solvers.inversion import solve_inversion
from hamsys.solvers.models import MonotonicityReport
from hamsys.spectral.bases import build_basis
from hamsys.spectral.models import Domain

logger = logging.getLogger(__name__)


def is_nested(small: Domain, large: Domain) -> bool:
    """Whether ``small`` fits inside ``large`` with both anchored as the model domains are.

    Intervals and rectangles share the corner at the origin, disks the centre.
    Hénon weights are taken about each domain's own centre, so nesting is only
    meaningful for alpha = beta = 0.
    """
    if small.kind is not large.kind:
        return False
    return all(a <= b for a, b in zip(small.lengths, large.lengths))


def domain_monotonicity(
    e: ExponentPair,
    small: Domain,
    large: Domain,
    modes: int = settings.DEFAULT_MODES,
    cfg: FrameworkConfig | None = None,
) -> MonotonicityReport:
    """Ground levels on two nested domains by the inversion method.

    Raises:
        DomainError: If ``small`` is not contained in ``large``.
        UnsupportedRegimeError: If the inversion method refuses the exponents.
    """
    if not is_nested(small, large):
        raise DomainError(f"{small} is not contained in {large}")
    cfg = cfg or FrameworkConfig(framework=Framework.INVERSION)
    levels = [solve_inversion(e, build_basis(domain, modes), cfg).level for domain in (small, large)]
    report = MonotonicityReport(str(small), str(large), *levels)
    if not report.monotone:
        logger.warning("Level grew from %.12g on %s to %.12g on %s", levels[0], small, levels[1], large)
    return report
