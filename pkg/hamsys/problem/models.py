"""Value types of the problem app: exponents, weights and their classification."""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from enum import Enum


class Side(str, Enum):
    """Which power of the Hamiltonian is meant.

    The f-side is |u|^{p-1}u, weighted by |x|^alpha in the v-equation; the
    g-side is |v|^{q-1}v, weighted by |x|^beta in the u-equation.
    """

    F = "f"
    G = "g"


class Regime(str, Enum):
    SUBLINEAR = "sublinear"
    LINEAR = "linear"
    SUPERLINEAR = "superlinear"


class HyperbolaPosition(str, Enum):
    BELOW = "below"
    ON = "on"
    ABOVE = "above"


@dataclass(frozen=True)
class ExponentPair:
    """The system -Delta u + c u = |x|^beta |v|^{q-1} v, -Delta v + c v = |x|^alpha |u|^{p-1} u.

    ``dimension`` is N of the target domain and ``potential`` the constant c >= 0.
    """

    p: float
    q: float
    alpha: float = 0.0
    beta: float = 0.0
    dimension: int = 1
    potential: float = 0.0

    def __post_init__(self):
        if not (self.p > 0 and self.q > 0):
            raise ValueError(f"Exponents must be positive, got p={self.p}, q={self.q}")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError(f"Hénon weights must be nonnegative, got alpha={self.alpha}, beta={self.beta}")
        if self.dimension < 1:
            raise ValueError(f"Dimension must be at least 1, got {self.dimension}")
        if self.potential < 0:
            raise ValueError(f"The potential must be nonnegative, got {self.potential}")

    @property
    def pq(self) -> float:
        return self.p * self.q

    @property
    def is_diagonal(self) -> bool:
        """Whether u = v is invariant: equal exponents and equal weights."""
        return self.p == self.q and self.alpha == self.beta

    def exponent(self, side: Side) -> float:
        return self.p if Side(side) is Side.F else self.q

    def weight_exponent(self, side: Side) -> float:
        return self.alpha if Side(side) is Side.F else self.beta

    def for_dimension(self, dimension: int) -> ExponentPair:
        return replace(self, dimension=dimension)

    def to_dict(self) -> dict:
        return asdict(self)

    def __str__(self):
        text = f"(p, q) = ({self.p:g}, {self.q:g}), N = {self.dimension}"
        if self.alpha or self.beta:
            text += f", (alpha, beta) = ({self.alpha:g}, {self.beta:g})"
        if self.potential:
            text += f", c = {self.potential:g}"
        return text


@dataclass(frozen=True)
class Classification:
    """Hypothesis flags of an exponent pair.

    - h1: subcritical, 1/(p+1) + 1/(q+1) > (N-2)/N
    - h2: h1, pq > 1 and p(N-4), q(N-4) < N+4 (the fractional framework)
    - h3: 1 > 1/(p+1) + 1/(q+1) > (N-2)/N (superlinear and subcritical)
    - h4: p, q > 1 and h1
    - h4_prime: h4 with (p+1)(N-2) <= 2N and (q+1)(N-2) <= 2N (both H^1-subcritical)
    - weighted_subcritical: (N+alpha)/(p+1) + (N+beta)/(q+1) > N-2
    """

    h1: bool
    h2: bool
    h3: bool
    h4: bool
    h4_prime: bool
    weighted_subcritical: bool
    regime: Regime
    position: HyperbolaPosition

    @property
    def subcritical(self) -> bool:
        return self.h1

    def holds(self, hypothesis: str) -> bool:
        """Look a flag up by its printed name, e.g. ``"H4'"``."""
        return getattr(self, hypothesis.lower().replace("'", "_prime"))

    def describe(self) -> str:
        flags = ", ".join(
            f"{name}={'yes' if getattr(self, attr) else 'no'}"
            for name, attr in (("H1", "h1"), ("H2", "h2"), ("H3", "h3"), ("H4", "h4"), ("H4'", "h4_prime"))
        )
        return f"{self.position.value} critical hyperbola, {self.regime.value}; {flags}"

    def to_dict(self) -> dict:
        data = asdict(self)
        data["regime"] = self.regime.value
        data["position"] = self.position.value
        return data
