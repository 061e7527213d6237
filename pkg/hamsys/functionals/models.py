"""Value types of the functionals app."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from hamsys import settings
from hamsys.problem.models import ExponentPair
from hamsys.spectral.models import Field, GridFunction


class Framework(str, Enum):
    DUAL = "dual"
    INVERSION = "inversion"
    LS_REDUCTION = "ls_reduction"
    SHOOTING = "shooting_oracle"

    @classmethod
    def parse_list(cls, text: str) -> list[Framework]:
        """Parse a comma separated selection; ``all`` means the three Galerkin frameworks."""
        names = [name.strip() for name in text.split(",") if name.strip()]
        if names == ["all"]:
            return [cls.DUAL, cls.INVERSION, cls.LS_REDUCTION]
        return [cls(name) for name in names]


@dataclass(frozen=True)
class SolutionPair:
    """A pair (u, v) on one basis with its energy I(u, v) and relative system residual."""

    u: Field
    v: Field
    exponents: ExponentPair
    energy: float
    residual: float
    provenance: Framework

    def __post_init__(self):
        self.u.basis.check_same(self.v.basis)
        if not np.isfinite(self.energy):
            raise ValueError(f"Energy must be finite, got {self.energy}")
        if not self.residual >= 0:
            raise ValueError(f"Residual must be nonnegative, got {self.residual}")
        object.__setattr__(self, "provenance", Framework(self.provenance))

    @property
    def basis(self):
        return self.u.basis

    def to_dict(self) -> dict:
        return {
            "exponents": self.exponents.to_dict(),
            "energy": self.energy,
            "residual": self.residual,
            "provenance": self.provenance.value,
        }


@dataclass(frozen=True)
class DualPair:
    """The dual variables f = |u|^{p-1}u, g = |v|^{q-1}v, stored nodally."""

    f: GridFunction
    g: GridFunction

    def __post_init__(self):
        self.f.basis.check_same(self.g.basis)

    @classmethod
    def from_nodal(cls, basis, f: np.ndarray, g: np.ndarray) -> DualPair:
        return cls(GridFunction(basis, f), GridFunction(basis, g))

    @property
    def basis(self):
        return self.f.basis


@dataclass(frozen=True)
class FrameworkConfig:
    """Knobs shared by the solvers.

    Attributes:
        framework (Framework): Which solver the configuration is for.
        split (float): The fractional split s in (0, 2) of I_s diagnostics; t = 2 - s.
        lam (float): The parameter lambda > 0 of the reduced functional.
        tolerance (float): Relative H^1 system residual at which a run counts as converged.
        max_iter (int): Outer iteration cap; the framework default when None.
        inner_tolerance (float): Stopping tolerance of the anti-diagonal maximization.
        inner_max_iter (int): Newton iteration cap of the anti-diagonal maximization.
        min_step (float): Smallest step tried by every backtracking line search.
        ray_window (tuple[float, float]): Search window of the ray maximization.
        seed (int): Seed of every random choice.
        perturbation (float): Relative size of a seeded random perturbation of the start.
    """

    framework: Framework = Framework.INVERSION
    split: float = 1.0
    lam: float = 1.0
    tolerance: float = settings.RESIDUAL_TOLERANCE
    max_iter: int | None = None
    inner_tolerance: float = settings.INNER_TOLERANCE
    inner_max_iter: int = settings.INNER_MAX_ITER
    min_step: float = settings.MIN_STEP
    ray_window: tuple[float, float] = settings.RAY_WINDOW
    seed: int = settings.DEFAULT_SEED
    perturbation: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "framework", Framework(self.framework))
        if not 0 < self.split < 2:
            raise ValueError(f"The fractional split must lie in (0, 2), got {self.split}")
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.tolerance <= 0:
            raise ValueError(f"The tolerance must be positive, got {self.tolerance}")
        low, high = self.ray_window
        if not 0 < low < high:
            raise ValueError(f"Invalid ray window {self.ray_window}")

    @property
    def complementary_split(self) -> float:
        return 2 - self.split

    @property
    def iteration_cap(self) -> int:
        if self.max_iter is not None:
            return self.max_iter
        if self.framework is Framework.INVERSION:
            return settings.INVERSION_MAX_ITER
        return settings.DESCENT_MAX_ITER

    def to_dict(self) -> dict:
        return {
            "framework": self.framework.value,
            "split": self.split,
            "lam": self.lam,
            "tolerance": self.tolerance,
            "max_iter": self.iteration_cap,
            "inner_tolerance": self.inner_tolerance,
            "inner_max_iter": self.inner_max_iter,
            "min_step": self.min_step,
            "ray_window": list(self.ray_window),
            "seed": self.seed,
            "perturbation": self.perturbation,
        }


@dataclass(frozen=True)
class ReducedState:
    """The reduced functional evaluated at w.

    ``psi`` is the anti-diagonal maximizer, ``(u, v) = (lam w + psi, w - psi/lam)``
    the assembled pair, ``value`` the reduced energy and ``gradient`` its
    coefficient gradient.
    """

    w: Field
    psi: Field
    u: Field
    v: Field
    lam: float
    value: float
    gradient: Field
    iterations: int = 0
