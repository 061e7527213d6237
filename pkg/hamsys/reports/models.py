"""Value types of the reports app."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from hamsys import settings
from hamsys.functionals.models import Framework, FrameworkConfig
from hamsys.problem.models import ExponentPair
from hamsys.spectral.bases import build_basis
from hamsys.spectral.models import Domain


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; every field has a default.

    Attributes:
        p, q, alpha, beta, potential: The system, see :class:`ExponentPair`.
        domain (Domain): The model domain.
        modes (int): Number of eigenmodes M.
        radial_only (bool): Keep only the m = 0 modes on the disk.
        frameworks (tuple[Framework, ...]): Solvers to run.
        tolerance (float): Residual at which a solver run counts as converged.
        max_iter (int): Outer iteration cap; the framework default when None.
        split (float): The fractional split s of the dual diagnostics.
        lams (tuple[float, ...]): lambda values of the reduced functional; one LS run each.
        seed (int): Seed of every random choice.
        perturbation (float): Relative size of the seeded start perturbation.
        henon_weights (tuple[float, ...]): alpha = beta values of the Hénon sweep.
        mode_list (tuple[int, ...]): Mode counts of the convergence study.
        checks (tuple[str, ...]): Verification checks; the applicable ones when None.
        output_dir (Path): Where artifacts are written.
    """

    p: float = 3.0
    q: float = 3.0
    alpha: float = 0.0
    beta: float = 0.0
    potential: float = 0.0
    domain: Domain = field(default_factory=lambda: Domain.interval(np.pi))
    modes: int = settings.DEFAULT_MODES
    radial_only: bool = False
    frameworks: tuple[Framework, ...] = (Framework.DUAL, Framework.INVERSION, Framework.LS_REDUCTION)
    tolerance: float = settings.RESIDUAL_TOLERANCE
    max_iter: int | None = None
    split: float = 1.0
    lams: tuple[float, ...] = (1.0,)
    seed: int = settings.DEFAULT_SEED
    perturbation: float = 0.0
    henon_weights: tuple[float, ...] = (0.0, 5.0, 10.0, 15.0, 20.0)
    mode_list: tuple[int, ...] = (16, 32, 64, 128)
    checks: tuple[str, ...] | None = None
    output_dir: Path = settings.OUTPUT_DIR

    def __post_init__(self):
        object.__setattr__(self, "frameworks", tuple(Framework(name) for name in self.frameworks))
        object.__setattr__(self, "lams", tuple(float(lam) for lam in self.lams))
        object.__setattr__(self, "henon_weights", tuple(float(w) for w in self.henon_weights))
        object.__setattr__(self, "mode_list", tuple(int(m) for m in self.mode_list))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if self.checks is not None:
            object.__setattr__(self, "checks", tuple(self.checks))
        if not self.frameworks:
            raise ValueError("Select at least one framework")
        if not self.lams or min(self.lams) <= 0:
            raise ValueError(f"lambda values must be positive, got {self.lams}")
        self.exponents

    @property
    def exponents(self) -> ExponentPair:
        return ExponentPair(
            self.p,
            self.q,
            alpha=self.alpha,
            beta=self.beta,
            dimension=self.domain.dimension,
            potential=self.potential,
        )

    def basis(self, modes: int | None = None):
        return build_basis(self.domain, modes or self.modes, radial_only=self.radial_only)

    def framework_config(self, framework, lam: float | None = None) -> FrameworkConfig:
        return FrameworkConfig(
            framework=framework,
            split=self.split,
            lam=self.lams[0] if lam is None else lam,
            tolerance=self.tolerance,
            max_iter=self.max_iter,
            seed=self.seed,
            perturbation=self.perturbation,
        )

    def to_dict(self) -> dict:
        return {
            "problem": {"p": self.p, "q": self.q, "alpha": self.alpha, "beta": self.beta, "potential": self.potential},
            "domain": self.domain.to_dict(),
            "modes": self.modes,
            "radial_only": self.radial_only,
            "frameworks": [framework.value for framework in self.frameworks],
            "tolerance": self.tolerance,
            "max_iter": self.max_iter,
            "split": self.split,
            "lams": list(self.lams),
            "seed": self.seed,
            "perturbation": self.perturbation,
            "henon_weights": list(self.henon_weights),
            "mode_list": list(self.mode_list),
            "checks": None if self.checks is None else list(self.checks),
            "output_dir": str(self.output_dir),
        }


@dataclass(frozen=True)
class RunManifest:
    """The record of one ``solve`` run, written as ``manifest.json`` in the run directory.

    ``results`` maps each run label to its result summary and ``artifacts`` to
    the files holding its fields and trace; together with the config echo they
    reproduce the run. Refused frameworks are listed with the failing hypothesis.
    """

    config: dict
    classification: dict
    results: dict
    refusals: dict
    verification: dict
    timings: dict
    artifacts: dict

    @property
    def passed(self) -> bool:
        reports = list(self.verification.values())
        return bool(self.results) and all(report["passed"] for report in reports)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "classification": self.classification,
            "results": self.results,
            "refusals": self.refusals,
            "verification": self.verification,
            "passed": self.passed,
            "timings": self.timings,
            "artifacts": self.artifacts,
        }

    @classmethod
    def from_dict(cls, data: dict) -> RunManifest:
        return cls(
            config=data["config"],
            classification=data["classification"],
            results=data["results"],
            refusals=data.get("refusals", {}),
            verification=data["verification"],
            timings=data.get("timings", {}),
            artifacts=data["artifacts"],
        )


@dataclass(frozen=True)
class ConvergenceRow:
    framework: Framework
    modes: int
    level: float
    gap: float

    def as_row(self) -> list:
        return [self.framework.value, self.modes, self.level, self.gap]


@dataclass(frozen=True)
class ConvergenceTable:
    """Levels c(M) of each framework and their gaps |c(M) - c(M_max)|."""

    rows: tuple[ConvergenceRow, ...]

    def gaps(self, framework) -> list[float]:
        framework = Framework(framework)
        rows = sorted((row for row in self.rows if row.framework is framework), key=lambda row: row.modes)
        return [row.gap for row in rows[:-1]]

    def decays_spectrally(self, framework, factor: float = 10.0) -> bool:
        """Whether each doubling shrinks the gap ``factor``-fold, or the gap already sits at rounding level."""
        framework = Framework(framework)
        gaps = self.gaps(framework)
        level = max(abs(row.level) for row in self.rows if row.framework is framework)
        floor = 1e-11 * level
        return all(b <= max(a / factor, floor) for a, b in zip(gaps, gaps[1:]))

    def orders(self, framework) -> list[float]:
        """log2 of successive gap ratios, the empirical order per doubling."""
        gaps = self.gaps(framework)
        return [float(np.log2(a / b)) if a > 0 and b > 0 else float("inf") for a, b in zip(gaps, gaps[1:])]
