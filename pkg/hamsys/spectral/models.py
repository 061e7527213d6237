"""Value types of the spectral app: model domains, eigenbases and fields on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import special

from hamsys.exceptions import BasisMismatchError, DomainError


class DomainKind(str, Enum):
    INTERVAL = "interval"
    RECTANGLE = "rectangle"
    DISK = "disk"


_LENGTH_COUNT = {
    DomainKind.INTERVAL: 1,
    DomainKind.RECTANGLE: 2,
    DomainKind.DISK: 1,
}

_DEFAULT_LENGTHS = {
    "interval": (np.pi,),
    "rectangle": (np.pi, np.pi),
    "disk": (1.0,),
}


@dataclass(frozen=True)
class Domain:
    """A model domain.

    The interval is [0, L], the rectangle [0, L1] x [0, L2] and the disk is
    centred at the origin with radius R. Hénon weights and the Pohozaev moment
    are taken about ``center``.
    """

    kind: DomainKind
    lengths: tuple[float, ...]

    def __post_init__(self):
        try:
            kind = DomainKind(self.kind)
        except ValueError as e:
            raise DomainError(f"Unsupported domain kind: {self.kind!r}") from e
        lengths = tuple(float(length) for length in self.lengths)
        if len(lengths) != _LENGTH_COUNT[kind]:
            raise DomainError(f"A {kind.value} takes {_LENGTH_COUNT[kind]} length(s), got {len(lengths)}")
        if not all(np.isfinite(length) and length > 0 for length in lengths):
            raise DomainError(f"Domain lengths must be strictly positive, got {lengths}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "lengths", lengths)

    @classmethod
    def interval(cls, length: float = np.pi) -> Domain:
        return cls(DomainKind.INTERVAL, (length,))

    @classmethod
    def rectangle(cls, width: float = np.pi, height: float = np.pi) -> Domain:
        return cls(DomainKind.RECTANGLE, (width, height))

    @classmethod
    def disk(cls, radius: float = 1.0) -> Domain:
        return cls(DomainKind.DISK, (radius,))

    @classmethod
    def parse(cls, text: str) -> Domain:
        """Parse ``kind:length[,length]``, e.g. ``interval:3.14159`` or ``disk:1``.

        ``pi`` is accepted as a length.
        """
        kind, _, params = text.strip().partition(":")
        try:
            lengths = tuple(
                np.pi if item.strip().lower() == "pi" else float(item) for item in params.split(",") if item.strip()
            )
        except ValueError as e:
            raise DomainError(f"Invalid domain specification: {text!r}") from e
        if not lengths:
            lengths = _DEFAULT_LENGTHS.get(kind.strip(), ())
        return cls(kind.strip(), lengths)

    @property
    def dimension(self) -> int:
        return 1 if self.kind is DomainKind.INTERVAL else 2

    @property
    def center(self) -> np.ndarray:
        if self.kind is DomainKind.DISK:
            return np.zeros(2)
        return np.array(self.lengths) / 2

    @property
    def measure(self) -> float:
        if self.kind is DomainKind.DISK:
            return np.pi * self.lengths[0] ** 2
        return float(np.prod(self.lengths))

    def contains(self, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        """Mask of the points lying in the closed domain."""
        points = as_points(points, self.dimension)
        if self.kind is DomainKind.DISK:
            return np.hypot(points[:, 0], points[:, 1]) <= self.lengths[0] + tol
        upper = np.array(self.lengths)
        return np.all((points >= -tol) & (points <= upper + tol), axis=1)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "lengths": list(self.lengths)}

    @classmethod
    def from_dict(cls, data: dict) -> Domain:
        return cls(data["kind"], tuple(data["lengths"]))

    def __str__(self):
        return f"{self.kind.value}({', '.join(f'{length:g}' for length in self.lengths)})"


@dataclass(frozen=True)
class Mode:
    """One Dirichlet eigenpair.

    ``indices`` is ``(n,)`` on the interval, ``(m, n)`` on the rectangle and
    ``(m, k)`` on the disk, where ``root`` holds the Bessel zero j_{m,k} and
    ``trig`` the angular factor ("", "sin" or "cos").
    """

    indices: tuple[int, ...]
    eigenvalue: float
    trig: str = ""
    root: float = 0.0
    norm: float = 1.0

    @property
    def is_radial(self) -> bool:
        return self.root > 0 and self.indices[0] == 0

    def __str__(self):
        if self.root:
            m, k = self.indices
            return f"J{m}(j{m},{k} r){self.trig}"
        return "sin" + "".join(f"[{index}]" for index in self.indices)


class SpectralBasis:
    """The first M Dirichlet eigenpairs of a model domain plus quadrature.

    Attributes:
        domain (Domain): The domain the basis lives on.
        modes (tuple[Mode, ...]): Eigenpairs sorted by eigenvalue.
        eigenvalues (np.ndarray): lambda_1 <= ... <= lambda_M.
        nodes (np.ndarray): Quadrature nodes, shape (Q, N).
        weights (np.ndarray): Quadrature weights, shape (Q,).
        matrix (np.ndarray): phi_n at the nodes, shape (M, Q).
        radius (np.ndarray): |x - center| at the nodes, the Hénon weight argument.
        boundary_matrix (np.ndarray): outward normal derivative of phi_n at the boundary nodes, shape (M, B).
        boundary_weights (np.ndarray): boundary quadrature weights, shape (B,).
        boundary_moment (np.ndarray): (x - center) . nu at the boundary nodes, shape (B,).

    Instances are built by :func:`hamsys.spectral.bases.build_basis` and never
    mutated afterwards.
    """

    def __init__(
        self,
        domain: Domain,
        modes: tuple[Mode, ...],
        nodes: np.ndarray,
        weights: np.ndarray,
        boundary_nodes: np.ndarray,
        boundary_weights: np.ndarray,
        boundary_matrix: np.ndarray,
        boundary_moment: np.ndarray,
        radial_only: bool = False,
        quadrature_factor: int = 4,
        grid_shape: tuple[int, ...] = (),
    ):
        self.domain = domain
        self.modes = tuple(modes)
        self.radial_only = radial_only
        self.quadrature_factor = quadrature_factor
        self.grid_shape = tuple(grid_shape)
        self.eigenvalues = _frozen(np.array([mode.eigenvalue for mode in self.modes]))
        self.nodes = _frozen(np.atleast_2d(nodes))
        self.weights = _frozen(weights)
        self.radius = _frozen(np.linalg.norm(self.nodes - domain.center, axis=1))
        self.matrix = _frozen(self.evaluate_modes(self.nodes))
        self.boundary_nodes = _frozen(np.atleast_2d(boundary_nodes))
        self.boundary_weights = _frozen(boundary_weights)
        self.boundary_matrix = _frozen(boundary_matrix)
        self.boundary_moment = _frozen(boundary_moment)

    @property
    def mode_count(self) -> int:
        return len(self.modes)

    @property
    def node_count(self) -> int:
        return len(self.weights)

    @property
    def key(self) -> tuple:
        return (self.domain, self.mode_count, self.radial_only, self.quadrature_factor)

    def __eq__(self, other):
        if not isinstance(other, SpectralBasis):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"SpectralBasis({self.domain}, M={self.mode_count}, Q={self.node_count})"

    def evaluate_modes(self, points: np.ndarray) -> np.ndarray:
        """Values of every eigenfunction at arbitrary points, zero outside the domain."""
        points = as_points(points, self.domain.dimension)
        inside = self.domain.contains(points)
        kind = self.domain.kind
        if kind is DomainKind.INTERVAL:
            (length,) = self.domain.lengths
            n = np.array([mode.indices[0] for mode in self.modes])[:, None]
            values = np.sqrt(2 / length) * np.sin(n * np.pi * points[None, :, 0] / length)
        elif kind is DomainKind.RECTANGLE:
            width, height = self.domain.lengths
            m = np.array([mode.indices[0] for mode in self.modes])[:, None]
            n = np.array([mode.indices[1] for mode in self.modes])[:, None]
            values = (
                2 / np.sqrt(width * height)
                * np.sin(m * np.pi * points[None, :, 0] / width)
                * np.sin(n * np.pi * points[None, :, 1] / height)
            )
        else:
            (radius,) = self.domain.lengths
            r = np.hypot(points[:, 0], points[:, 1])
            theta = np.arctan2(points[:, 1], points[:, 0])
            m = np.array([mode.indices[0] for mode in self.modes])[:, None]
            roots = np.array([mode.root for mode in self.modes])[:, None]
            norms = np.array([mode.norm for mode in self.modes])[:, None]
            trig = np.array([mode.trig for mode in self.modes])[:, None]
            angular = np.where(trig == "cos", np.cos(m * theta), np.where(trig == "sin", np.sin(m * theta), 1.0))
            values = norms * special.jv(m, roots * r[None, :] / radius) * angular
        return np.where(inside[None, :], values, 0.0)

    def synthesize(self, coefficients: np.ndarray) -> np.ndarray:
        """Nodal values of sum_n a_n phi_n."""
        return np.asarray(coefficients) @ self.matrix

    def project(self, values: np.ndarray) -> np.ndarray:
        """Galerkin coefficients <h, phi_n> of nodal values by quadrature."""
        return self.matrix @ (self.weights * np.asarray(values))

    def integrate(self, values: np.ndarray) -> float:
        return float(self.weights @ np.asarray(values))

    def weight(self, gamma: float) -> np.ndarray:
        """|x - center|^gamma at the nodes.

        Raises:
            DomainError: If gamma <= -N, where the weight is not integrable.
        """
        if gamma == 0:
            return np.ones(self.node_count)
        if gamma <= -self.domain.dimension:
            raise DomainError(
                f"Weight |x|^{gamma} is not integrable in dimension {self.domain.dimension}"
            )
        return self.radius ** gamma

    def check_same(self, *others: SpectralBasis) -> None:
        for other in others:
            if other != self:
                raise BasisMismatchError(f"Basis mismatch: {self!r} vs {other!r}")

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.to_dict(),
            "modes": self.mode_count,
            "radial_only": self.radial_only,
            "quadrature_factor": self.quadrature_factor,
        }


def as_points(points, dimension: int) -> np.ndarray:
    """Coerce coordinates to shape (P, N); bare 1D arrays are read as interval abscissae."""
    points = np.asarray(points, dtype=float)
    if dimension == 1 and points.ndim <= 1:
        return points.reshape(-1, 1)
    return np.atleast_2d(points)


def _frozen(array) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Field:
    """A scalar function sum_n a_n phi_n with its nodal values cached.

    Fields are immutable; arithmetic returns new fields on the same basis.
    """

    basis: SpectralBasis
    coefficients: np.ndarray
    nodal: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        coefficients = _frozen(np.ravel(self.coefficients))
        if coefficients.shape != (self.basis.mode_count,):
            raise BasisMismatchError(
                f"Expected {self.basis.mode_count} coefficients, got {coefficients.shape[0]}"
            )
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "nodal", _frozen(self.basis.synthesize(coefficients)))

    @classmethod
    def zeros(cls, basis: SpectralBasis) -> Field:
        return cls(basis, np.zeros(basis.mode_count))

    @classmethod
    def mode(cls, basis: SpectralBasis, n: int, amplitude: float = 1.0) -> Field:
        """amplitude * phi_n, with n counted from 1."""
        coefficients = np.zeros(basis.mode_count)
        coefficients[n - 1] = amplitude
        return cls(basis, coefficients)

    @classmethod
    def from_nodal(cls, basis: SpectralBasis, values: np.ndarray) -> Field:
        return cls(basis, basis.project(values))

    @classmethod
    def from_function(cls, basis: SpectralBasis, function) -> Field:
        """Project ``function(points)`` (points of shape (Q, N)) onto the basis."""
        return cls.from_nodal(basis, function(basis.nodes))

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self.coefficients @ self.basis.evaluate_modes(points)

    def grid(self) -> GridFunction:
        return GridFunction(self.basis, self.nodal)

    def is_zero(self) -> bool:
        return not np.any(self.coefficients)

    def _other(self, other) -> np.ndarray:
        if isinstance(other, Field):
            self.basis.check_same(other.basis)
            return other.coefficients
        return NotImplemented

    def __add__(self, other):
        coefficients = self._other(other)
        if coefficients is NotImplemented:
            return NotImplemented
        return Field(self.basis, self.coefficients + coefficients)

    def __sub__(self, other):
        coefficients = self._other(other)
        if coefficients is NotImplemented:
            return NotImplemented
        return Field(self.basis, self.coefficients - coefficients)

    def __mul__(self, scalar):
        if isinstance(scalar, Field):
            return NotImplemented
        return Field(self.basis, self.coefficients * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Field(self.basis, self.coefficients / float(scalar))

    def __neg__(self):
        return Field(self.basis, -self.coefficients)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Nodal values on a basis' quadrature grid without the synthesis invariant.

    Holds data that the eigenbasis cannot represent exactly: rearrangements,
    polarizations and the dual variables f, g.
    """

    basis: SpectralBasis
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(np.ravel(self.values))
        if values.shape != (self.basis.node_count,):
            raise BasisMismatchError(f"Expected {self.basis.node_count} nodal values, got {values.shape[0]}")
        object.__setattr__(self, "values", values)

    def to_field(self) -> Field:
        return Field.from_nodal(self.basis, self.values)
