"""The Pohozaev identity of the system on star-shaped model domains.

With weights and moment taken about the domain centre x0 the identity reads

    ((N+alpha)/(p+1) - a) int |x|^alpha |u|^{p+1}
        + ((N+beta)/(q+1) - (N-2-a)) int |x|^beta |v|^{q+1}
        - 2c int u v
    = int_{boundary} ((x - x0) . nu) d_nu u d_nu v

for every real a; it is affine in a with slope int |v|^{q+1} - int |u|^{p+1},
which vanishes at solutions.
"""
from hamsys.problem.models import ExponentPair
from hamsys.spectral.utils import boundary_flux, inner, power_integral


def pohozaev_terms(u, v, e: ExponentPair) -> dict:
    """The integrals entering the identity."""
    u.basis.check_same(v.basis)
    return {
        "u_power": power_integral(u, e.p + 1, e.alpha),
        "v_power": power_integral(v, e.q + 1, e.beta),
        "mixed": inner(u, v),
        "boundary": boundary_flux(u, v),
    }


def pohozaev_residual(pair, a: float, e: ExponentPair | None = None) -> float:
    """|LHS - RHS| of the Pohozaev identity for a pair (u, v).

    Args:
        pair: Anything with ``u`` and ``v`` fields, and ``exponents`` when ``e`` is omitted.
        a (float): The free parameter of the identity, a > 0.
        e (ExponentPair): The exponents; defaults to ``pair.exponents``.

    Returns:
        float: The absolute residual.
    """
    if a <= 0:
        raise ValueError(f"The free parameter must be positive, got {a}")
    e = e or pair.exponents
    n = pair.u.basis.domain.dimension
    terms = pohozaev_terms(pair.u, pair.v, e)
    lhs = (
        ((n + e.alpha) / (e.p + 1) - a) * terms["u_power"]
        + ((n + e.beta) / (e.q + 1) - (n - 2 - a)) * terms["v_power"]
        - 2 * e.potential * terms["mixed"]
    )
    return abs(lhs - terms["boundary"])
