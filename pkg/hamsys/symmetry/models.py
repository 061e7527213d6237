"""Value types of the symmetry app."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from hamsys import settings
from hamsys.spectral.models import GridFunction


@dataclass(frozen=True)
class HalfSpace:
    """The closed half-space {y : y . normal >= offset}, y measured from the domain centre.

    ``offset = 0`` puts the boundary through the centre; negative offsets keep
    the centre in the interior.
    """

    normal: tuple[float, ...]
    offset: float = 0.0

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float).ravel()
        length = np.linalg.norm(normal)
        if not np.isclose(length, 1.0, rtol=0, atol=1e-12):
            raise ValueError(f"The normal must have unit length, got |n| = {length}")
        object.__setattr__(self, "normal", tuple(float(x) for x in normal))
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_angle(cls, angle: float, offset: float = 0.0) -> HalfSpace:
        return cls((np.cos(angle), np.sin(angle)), offset)

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def contains(self, y: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        return np.asarray(y) @ np.array(self.normal) >= self.offset - tol

    def reflect(self, y: np.ndarray) -> np.ndarray:
        """sigma_H(y), the mirror image across the boundary hyperplane."""
        normal = np.array(self.normal)
        distance = np.asarray(y) @ normal - self.offset
        return y - 2 * distance[:, None] * normal

    def to_dict(self) -> dict:
        return {"normal": list(self.normal), "offset": self.offset}


@dataclass(frozen=True, eq=False)
class SchwarzProfile:
    """The Schwarz rearrangement of nodal data as an exact radial step function.

    ``masses`` are the cumulative quadrature masses of the nodal values sorted
    in decreasing order, ``values`` those sorted values; w*(x) = values[k] where
    the ball of radius |x| has mass in (masses[k-1], masses[k]].
    """

    dimension: int
    masses: np.ndarray
    values: np.ndarray

    def mass_of_radius(self, r) -> np.ndarray:
        r = np.abs(np.asarray(r, dtype=float))
        return 2 * r if self.dimension == 1 else np.pi * r**2

    def radius_of_mass(self, m) -> np.ndarray:
        m = np.maximum(np.asarray(m, dtype=float), 0.0)
        return m / 2 if self.dimension == 1 else np.sqrt(m / np.pi)

    @property
    def cells(self) -> np.ndarray:
        return np.diff(self.masses, prepend=0.0)

    def __call__(self, r) -> np.ndarray:
        index = np.searchsorted(self.masses, self.mass_of_radius(r), side="left")
        padded = np.append(self.values, 0.0)
        return padded[np.minimum(index, len(self.values))]

    def cumulative(self, m) -> np.ndarray:
        """int_0^m w*(s) ds in the mass variable; piecewise linear, constant past the support."""
        totals = np.concatenate([[0.0], np.cumsum(self.cells * self.values)])
        return np.interp(m, np.concatenate([[0.0], self.masses]), totals)

    def cell_means(self, bounds) -> np.ndarray:
        """Mean of w* over each mass interval [bounds[j], bounds[j+1]]."""
        bounds = np.asarray(bounds, dtype=float)
        return np.diff(self.cumulative(bounds)) / np.diff(bounds)

    def power_integral(self, r: float, gamma: float = 0.0) -> float:
        """int |x|^gamma |w*|^r, integrated exactly over the shells of the step function.

        Without a weight this is exactly the quadrature of |w|^r.
        """
        powers = np.abs(self.values) ** r
        if gamma == 0:
            return float(self.cells @ powers)
        exponent = gamma + self.dimension
        if exponent <= 0:
            raise ValueError(f"|x|^{gamma} is not integrable in dimension {self.dimension}")
        outer = self.radius_of_mass(self.masses) ** exponent
        shells = np.diff(outer, prepend=0.0) * self.dimension * self.mass_of_radius(1.0) / exponent
        return float(shells @ powers)

    def superlevel_measure(self, level: float) -> float:
        """|{w* > level}|."""
        count = np.count_nonzero(self.values > level)
        return float(self.masses[count - 1]) if count else 0.0


@dataclass(frozen=True, eq=False)
class Rearrangement(GridFunction):
    """A Schwarz rearrangement: nodal values plus the exact step function they sample.

    Each group of nodes at one distance from the centre spans a quadrature mass
    interval, ordered outwards, and carries the mean of w* over it. Integrals of
    powers go through ``profile`` and are exact.
    """

    profile: SchwarzProfile = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class TalentiReport:
    """Comparison of u*, from -Delta u = f, with w, from -Delta w = f*.

    ``violation`` is the largest relative excess of int_0^m u* over int_0^m w
    over the quadrature masses m, the ordering in the form the quadrature
    measure resolves exactly. ``pointwise_violation`` is max(u* - w) and ``gap``
    max(w - u*) at the nodes, both relative to max w; the nodal comparison
    carries the quadrature error of the superlevel sets of u.
    """

    violation: float
    pointwise_violation: float
    gap: float
    rearrangement_gap: float

    @property
    def holds(self) -> bool:
        return self.violation <= settings.TALENTI_SLACK

    @property
    def equality(self) -> bool:
        return max(self.gap, self.pointwise_violation) < settings.TOLERANCES["pointwise"]

    def to_dict(self) -> dict:
        return {
            "violation": self.violation,
            "pointwise_violation": self.pointwise_violation,
            "gap": self.gap,
            "rearrangement_gap": self.rearrangement_gap,
            "holds": self.holds,
            "equality": self.equality,
        }


@dataclass(frozen=True)
class PolarizationComparison:
    """Solutions of -Delta u = f and -Delta v = f_H compared under one polarization.

    Attributes:
        v_deficit (float): ||v_H - v||_2 / ||v||_2, zero in the continuum.
        pointwise_gap (float): max(u_H - v) / max v, nonpositive in the continuum.
        margins (dict): For s in (1, 2), int v^s phi_H - int u^s phi relative to int v^s phi_H.
    """

    v_deficit: float
    pointwise_gap: float
    margins: dict

    @property
    def holds(self) -> bool:
        tol = settings.POLARIZATION_SLACK
        return (
            self.v_deficit <= tol
            and self.pointwise_gap <= tol
            and all(margin >= -tol for margin in self.margins.values())
        )

    def to_dict(self) -> dict:
        return {
            "v_deficit": self.v_deficit,
            "pointwise_gap": self.pointwise_gap,
            "margins": {str(s): margin for s, margin in self.margins.items()},
            "holds": self.holds,
        }


@dataclass(frozen=True)
class SymmetryReport:
    """Symmetry certificates of one field at the resolution of the sampled half-spaces.

    ``violations`` counts the sampled H in the axis family whose polarization
    moves the field by more than ``settings.FOLIATED_DEFICIT_TOLERANCE``.
    ``axis_asymmetry`` is ||u - u o R_e||_2 / ||u||_2 for the reflection R_e across the axis.
    """

    radial_deficit: float
    foliated_deficit: float
    axis: tuple[float, ...]
    violations: int
    samples: int
    axis_asymmetry: float = 0.0

    def __post_init__(self):
        if self.radial_deficit < 0 or self.foliated_deficit < 0:
            raise ValueError("Deficits are nonnegative")

    @property
    def radial(self) -> bool:
        return self.radial_deficit <= settings.RADIAL_DEFICIT_TOLERANCE

    @property
    def foliated(self) -> bool:
        return self.foliated_deficit <= settings.FOLIATED_DEFICIT_TOLERANCE

    def to_dict(self) -> dict:
        return {
            "radial_deficit": self.radial_deficit,
            "foliated_deficit": self.foliated_deficit,
            "axis": list(self.axis),
            "violations": self.violations,
            "samples": self.samples,
            "axis_asymmetry": self.axis_asymmetry,
            "radial": self.radial,
            "foliated": self.foliated,
        }


@dataclass(frozen=True)
class BreakingRow:
    """One weight of a Hénon sweep: radial and full levels and the full minimizer's symmetry.

    ``residual`` is the system residual of the full minimizer the deficits were measured on.
    """

    alpha: float
    beta: float
    c_rad: float
    c_full: float
    foliated_deficit: float
    radial_deficit: float
    axis: tuple[float, ...] = ()
    residual: float = 0.0

    @property
    def breaking(self) -> bool:
        return self.c_full < self.c_rad - settings.BREAKING_MARGIN * abs(self.c_rad)

    def as_row(self) -> list:
        return [self.alpha, self.beta, self.c_rad, self.c_full, int(self.breaking), self.foliated_deficit]

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "c_rad": self.c_rad,
            "c_full": self.c_full,
            "breaking": self.breaking,
            "foliated_deficit": self.foliated_deficit,
            "radial_deficit": self.radial_deficit,
            "axis": list(self.axis),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares slope of log c against log alpha and the reference exponent."""

    slope: float
    intercept: float
    reference: float
    points: int

    def to_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept, "reference": self.reference, "points": self.points}
