"""Classification of exponent pairs and evaluation of the power nonlinearities."""
from fractions import Fraction

import numpy as np

from hamsys.exceptions import UnsupportedRegimeError
from hamsys.problem.models import Classification, ExponentPair, HyperbolaPosition, Regime, Side

# tolerance for the sign tests when an input is not a short rational
SIGN_TOLERANCE = 1e-12

_CONDITIONS = {
    "H1": "1/(p+1) + 1/(q+1) > (N-2)/N",
    "H2": "H1, pq > 1 and p(N-4), q(N-4) < N+4",
    "H3": "1 > 1/(p+1) + 1/(q+1) > (N-2)/N",
    "H4": "p, q > 1 and 1/(p+1) + 1/(q+1) > (N-2)/N",
    "H4'": "p, q > 1 and (p+1)(N-2), (q+1)(N-2) <= 2N",
}


def as_rational(x: float) -> Fraction | None:
    """Return x as a short fraction when it is one, else None."""
    fraction = Fraction(x).limit_denominator(10**6)
    if float(fraction) == x:
        return fraction
    return None


def _sign(value, exact: bool) -> int:
    """Sign of a Fraction exactly, or of a float up to SIGN_TOLERANCE."""
    if exact:
        return (value > 0) - (value < 0)
    if abs(value) <= SIGN_TOLERANCE:
        return 0
    return 1 if value > 0 else -1


def classify(e: ExponentPair) -> Classification:
    """Evaluate (H1)-(H4') and the position relative to the critical hyperbola.

    Comparisons are exact when p and q are short rationals, otherwise they use
    a tolerance of SIGN_TOLERANCE.
    """
    p, q, n = as_rational(e.p), as_rational(e.q), e.dimension
    exact = p is not None and q is not None
    if not exact:
        p, q = e.p, e.q
    one = Fraction(1) if exact else 1.0
    total = one / (p + 1) + one / (q + 1)
    critical = Fraction(n - 2, n) if exact else (n - 2) / n

    hyperbola = _sign(total - critical, exact)
    position = {1: HyperbolaPosition.BELOW, 0: HyperbolaPosition.ON, -1: HyperbolaPosition.ABOVE}[hyperbola]
    regime = {-1: Regime.SUBLINEAR, 0: Regime.LINEAR, 1: Regime.SUPERLINEAR}[_sign(p * q - 1, exact)]

    h1 = hyperbola > 0
    superlinear = regime is Regime.SUPERLINEAR
    h2 = h1 and superlinear and _sign(p * (n - 4) - (n + 4), exact) < 0 and _sign(q * (n - 4) - (n + 4), exact) < 0
    h3 = h1 and superlinear
    h4 = h1 and _sign(p - 1, exact) > 0 and _sign(q - 1, exact) > 0
    h4_prime = h4 and _sign((p + 1) * (n - 2) - 2 * n, exact) <= 0 and _sign((q + 1) * (n - 2) - 2 * n, exact) <= 0
    weighted = (n + e.alpha) / (e.p + 1) + (n + e.beta) / (e.q + 1) > n - 2
    return Classification(
        h1=h1,
        h2=h2,
        h3=h3,
        h4=h4,
        h4_prime=h4_prime,
        weighted_subcritical=weighted,
        regime=regime,
        position=position,
    )


def require(e: ExponentPair, hypothesis: str, method: str = "this method") -> Classification:
    """Refuse an exponent pair failing ``hypothesis``.

    Raises:
        UnsupportedRegimeError: Naming the hypothesis and its condition.
    """
    classification = classify(e)
    if not classification.holds(hypothesis):
        raise UnsupportedRegimeError(
            f"{method} requires ({hypothesis}): {_CONDITIONS[hypothesis]}; got {e}",
            hypothesis,
        )
    return classification


def power(s, exponent: float):
    """|s|^{exponent-1} s, odd in s."""
    s = np.asarray(s, dtype=float)
    return np.sign(s) * np.abs(s) ** exponent


def power_primitive(s, exponent: float):
    """|s|^{exponent+1} / (exponent+1)."""
    return np.abs(np.asarray(s, dtype=float)) ** (exponent + 1) / (exponent + 1)


def power_derivative(s, exponent: float):
    """exponent |s|^{exponent-1}; +inf at s = 0 when exponent < 1."""
    s = np.abs(np.asarray(s, dtype=float))
    with np.errstate(divide="ignore"):
        return np.where(s > 0, exponent * s ** (exponent - 1), np.inf if exponent < 1 else float(exponent == 1))


def power_inverse(s, exponent: float):
    """Inverse of :func:`power`: |s|^{1/exponent - 1} s."""
    return power(s, 1 / exponent)


def nonlinearity(e: ExponentPair, side: Side, s, variant: str = "value"):
    """Evaluate the f- or g-side power of the Hamiltonian.

    Args:
        e (ExponentPair): The exponents.
        side (Side): f-side (p) or g-side (q).
        s: Point(s) of evaluation.
        variant (str): ``"value"``, ``"primitive"`` or ``"derivative"``.
    """
    exponent = e.exponent(side)
    evaluate = {"value": power, "primitive": power_primitive, "derivative": power_derivative}
    try:
        return evaluate[variant](s, exponent)
    except KeyError as exc:
        raise ValueError(f"Unknown nonlinearity variant: {variant}") from exc
