"""Exponent bookkeeping, hypothesis classification and the power nonlinearities."""
from hamsys.problem.models import Classification, ExponentPair, HyperbolaPosition, Regime, Side
from hamsys.problem.utils import classify, nonlinearity, require

__all__ = [
    "Classification",
    "ExponentPair",
    "HyperbolaPosition",
    "Regime",
    "Side",
    "classify",
    "nonlinearity",
    "require",
]
