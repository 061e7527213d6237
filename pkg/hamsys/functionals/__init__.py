"""The energy functionals of the system, their duals, reductions and gradients."""
from hamsys.functionals.energies import (
    energy_direct,
    energy_dual,
    energy_fourth_order,
    energy_fractional,
    solution_pair,
    system_residual,
)
from hamsys.functionals.models import DualPair, Framework, FrameworkConfig, ReducedState, SolutionPair
from hamsys.functionals.reduction import energy_reduced, ls_saddle_level

__all__ = [
    "DualPair",
    "Framework",
    "FrameworkConfig",
    "ReducedState",
    "SolutionPair",
    "energy_direct",
    "energy_dual",
    "energy_fourth_order",
    "energy_fractional",
    "energy_reduced",
    "ls_saddle_level",
    "solution_pair",
    "system_residual",
]
