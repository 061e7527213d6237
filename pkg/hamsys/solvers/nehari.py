"""Degeneracy of the standard Nehari set along the pairs (t u, t lam u).

(t u, t lam u) lies on the standard Nehari set exactly when

    t^{p-1} ||u||_{p+1,alpha}^{p+1} + t^{q-1} lam^{q+1} ||u||_{q+1,beta}^{q+1} = 2 lam D(u),

with D(u) = sum (lambda_n + c) a_n^2. As lam grows the admissible pairs shrink
toward the origin, so the set is not bounded away from zero.
"""
import logging

import numpy as np
from scipy import optimize

from hamsys.problem.models import ExponentPair
from hamsys.problem.utils import require
from hamsys.solvers.models import NehariRow
from hamsys.spectral.models import Field
from hamsys.spectral.utils import e_norm, power_integral

logger = logging.getLogger(__name__)

LOG_WINDOW = (-60.0, 60.0)
SCAN_POINTS = 2401


def nehari_degeneracy_demo(e: ExponentPair, u: Field, lams) -> list[NehariRow]:
    """One row per lam: the smallest admissible t and the norm of (t u, t lam u).

    Rows without a root in t in [e^-60, e^60] are kept with ``t = None`` and a note.

    Raises:
        UnsupportedRegimeError: If (H3) fails.
        ValueError: If u is zero.
    """
    e = e.for_dimension(u.basis.domain.dimension)
    require(e, "H3", "The Nehari demo")
    if u.is_zero():
        raise ValueError("The Nehari demo needs a nonzero u")
    lebesgue_p = power_integral(u, e.p + 1, e.alpha)
    lebesgue_q = power_integral(u, e.q + 1, e.beta)
    dirichlet = e_norm(u, 1, e.potential) ** 2
    grid = np.linspace(*LOG_WINDOW, SCAN_POINTS)

    rows = []
    for lam in lams:
        lam = float(lam)
        target = 2 * lam * dirichlet

        def balance(s):
            return np.exp(s * (e.p - 1)) * lebesgue_p + np.exp(s * (e.q - 1)) * lam ** (e.q + 1) * lebesgue_q - target

        values = balance(grid)
        changes = np.flatnonzero(np.sign(values[:-1]) != np.sign(values[1:]))
        if not changes.size:
            logger.info("No Nehari pair (t u, t lam u) for lam = %g", lam)
            rows.append(NehariRow(lam, None, None, None, note="no admissible t in the scanned window"))
            continue
        k = changes[0]
        s = optimize.brentq(balance, grid[k], grid[k + 1], xtol=1e-14)
        t = float(np.exp(s))
        rows.append(
            NehariRow(
                lam=lam,
                t=t,
                norm=float(t * np.sqrt(1 + lam**2) * np.sqrt(dirichlet)),
                identity_residual=float(abs(balance(s)) / target),
            )
        )
    return rows
