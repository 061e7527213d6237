"""The ground-state solvers and the shooting oracle."""
from hamsys.functionals.models import Framework, FrameworkConfig
from hamsys.solvers.dual import solve_dual
from hamsys.solvers.inversion import solve_inversion
from hamsys.solvers.ls_reduction import solve_ls_reduction
from hamsys.solvers.models import FrameworkResult, MonotonicityReport, NehariRow, Shot, TraceRow
from hamsys.solvers.monotonicity import domain_monotonicity
from hamsys.solvers.nehari import nehari_degeneracy_demo
from hamsys.solvers.shooting import scalar_shooting, solve_shooting


def solve(framework, e, basis, cfg: FrameworkConfig | None = None, **kwargs) -> FrameworkResult:
    """Run one framework on ``basis``; the shooting oracle uses ``basis.domain``."""
    framework = Framework(framework)
    if cfg is None:
        cfg = FrameworkConfig(framework=framework)
    if framework is Framework.DUAL:
        return solve_dual(e, basis, cfg, **kwargs)
    if framework is Framework.INVERSION:
        return solve_inversion(e, basis, cfg, **kwargs)
    if framework is Framework.LS_REDUCTION:
        return solve_ls_reduction(e, basis, cfg, **kwargs)
    return solve_shooting(e, basis.domain, cfg, basis=basis)


__all__ = [
    "FrameworkResult",
    "MonotonicityReport",
    "NehariRow",
    "Shot",
    "TraceRow",
    "domain_monotonicity",
    "nehari_degeneracy_demo",
    "scalar_shooting",
    "solve",
    "solve_dual",
    "solve_inversion",
    "solve_ls_reduction",
    "solve_shooting",
]
