"""Value types of the solvers app."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from hamsys import settings
from hamsys.functionals.models import Framework, SolutionPair


@dataclass(frozen=True)
class TraceRow:
    """One outer iteration: the current level, system residual and accepted step."""

    iteration: int
    energy: float
    residual: float
    step: float

    def as_row(self) -> list:
        return [self.iteration, self.energy, self.residual, self.step]


@dataclass(frozen=True)
class FrameworkResult:
    """The outcome of one solver run.

    ``level`` is the ground level c reported by the framework's own
    characterization; ``solution.energy`` is I(u, v) of the returned pair.
    ``diagnostics`` holds framework specific numbers (the embedding constant of
    the inversion, the ray parameter of the reduction, ...).
    """

    framework: Framework
    level: float
    solution: SolutionPair
    iterations: int
    trace: tuple[TraceRow, ...] = ()
    converged: bool = False
    tolerance: float = settings.RESIDUAL_TOLERANCE
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "framework", Framework(self.framework))
        object.__setattr__(self, "trace", tuple(self.trace))
        object.__setattr__(self, "level", float(self.level))
        object.__setattr__(self, "iterations", int(self.iterations))
        object.__setattr__(self, "converged", bool(self.converged))
        object.__setattr__(self, "tolerance", float(self.tolerance))
        if not np.isfinite(self.level):
            raise ValueError(f"The level must be finite, got {self.level}")
        if self.converged and self.solution.residual > self.tolerance:
            raise ValueError(
                f"A converged result needs residual <= {self.tolerance:g}, got {self.solution.residual:g}"
            )

    @property
    def exponents(self):
        return self.solution.exponents

    @property
    def basis(self):
        return self.solution.basis

    @property
    def u(self):
        return self.solution.u

    @property
    def v(self):
        return self.solution.v

    def to_dict(self) -> dict:
        return {
            "framework": self.framework.value,
            "level": self.level,
            "energy": self.solution.energy,
            "residual": self.solution.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "tolerance": self.tolerance,
            "exponents": self.exponents.to_dict(),
            "basis": self.basis.to_dict(),
            "diagnostics": {key: _plain(value) for key, value in self.diagnostics.items()},
        }


@dataclass(frozen=True)
class Shot:
    """A converged shot of the radial ODE system from r = 0.

    ``profile(r)`` returns (u(r), v(r)) on [0, radius]; ``level`` is the energy
    of the pair over the whole domain and ``mismatch`` the relative boundary miss.
    """

    u0: float
    v0: float
    level: float
    mismatch: float
    radius: float
    profile: object = field(repr=False, compare=False)

    def __call__(self, r):
        return self.profile(r)


@dataclass(frozen=True)
class NehariRow:
    """(t u, t lam u) on the standard Nehari set, or the reason no such t exists."""

    lam: float
    t: float | None
    norm: float | None
    identity_residual: float | None
    note: str = ""

    @property
    def admissible(self) -> bool:
        return self.t is not None

    def to_dict(self) -> dict:
        return {
            "lam": self.lam,
            "t": self.t,
            "norm": self.norm,
            "identity_residual": self.identity_residual,
            "admissible": self.admissible,
            "note": self.note,
        }


@dataclass(frozen=True)
class MonotonicityReport:
    """Levels on two nested domains; the larger domain must not have a larger level."""

    small: str
    large: str
    level_small: float
    level_large: float

    @property
    def monotone(self) -> bool:
        return self.level_large <= self.level_small + settings.TOLERANCES["level"] * abs(self.level_small)

    def to_dict(self) -> dict:
        return {
            "small": self.small,
            "large": self.large,
            "level_small": self.level_small,
            "level_large": self.level_large,
            "monotone": self.monotone,
        }


def _plain(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value
