"""Independent oracle: shooting the radial ODE system from the centre.

On the interval (N = 1, half-length R) and the disk (N = 2, radius R) the
ground state is radial about the centre and solves

    u'' = -(N-1)/r u' + c u - r^beta |v|^{q-1} v,
    v'' = -(N-1)/r v' + c v - r^alpha |u|^{p-1} u,

with u'(0) = v'(0) = 0 and u(R) = v(R) = 0. The removable singularity at r = 0 is
bridged by the leading terms of the series solution.
"""
import logging
import math

import numpy as np
from scipy import integrate, optimize

from hamsys import settings
from hamsys.exceptions import DomainError, OracleError, UnsupportedRegimeError
from hamsys.functionals.models import Framework, FrameworkConfig, SolutionPair
from hamsys.problem.models import ExponentPair
from hamsys.problem.utils import require
from hamsys.solvers.models import FrameworkResult, Shot
from hamsys.spectral.bases import build_basis
from hamsys.spectral.models import DomainKind, Field

logger = logging.getLogger(__name__)

# |u| + |v| beyond this multiple of |u0| + |v0| stops the integration
BLOW_UP = 1e6


def radial_setup(domain) -> tuple[int, float, float]:
    """(N, R, angular factor) of the radial reduction of ``domain``.

    Raises:
        DomainError: On rectangles.
    """
    if domain.kind is DomainKind.INTERVAL:
        return 1, domain.lengths[0] / 2, 2.0
    if domain.kind is DomainKind.DISK:
        return 2, domain.lengths[0], 2 * np.pi
    raise DomainError(f"Shooting needs an interval or a disk, got {domain}")


def _odd(s, exponent):
    return math.copysign(abs(s) ** exponent, s)


def _series(e, n, u0, v0, r):
    """u, u', v, v' near r = 0."""
    c = e.potential
    g0, f0 = _odd(v0, e.q), _odd(u0, e.p)
    u = u0 - g0 * r ** (e.beta + 2) / ((e.beta + 2) * (e.beta + n)) + c * u0 * r**2 / (2 * n)
    du = -g0 * r ** (e.beta + 1) / (e.beta + n) + c * u0 * r / n
    v = v0 - f0 * r ** (e.alpha + 2) / ((e.alpha + 2) * (e.alpha + n)) + c * v0 * r**2 / (2 * n)
    dv = -f0 * r ** (e.alpha + 1) / (e.alpha + n) + c * v0 * r / n
    return u, du, v, dv


def _integrate(e, n, radius, u0, v0):
    c, p, q, alpha, beta = e.potential, e.p, e.q, e.alpha, e.beta
    start = settings.SHOOTING_SERIES_FRACTION * radius

    def rhs(r, y):
        u, du, v, dv, _ = y
        ddu = -(n - 1) / r * du + c * u - r**beta * _odd(v, q)
        ddv = -(n - 1) / r * dv + c * v - r**alpha * _odd(u, p)
        density = r ** (n - 1) * (
            du * dv + c * u * v - r**alpha * abs(u) ** (p + 1) / (p + 1) - r**beta * abs(v) ** (q + 1) / (q + 1)
        )
        return [du, ddu, dv, ddv, density]

    def blow_up(r, y):
        return BLOW_UP * (abs(u0) + abs(v0)) - abs(y[0]) - abs(y[2])

    blow_up.terminal = True
    # the u'v' term is of higher order on [0, start]
    energy = (
        c * u0 * v0 * start**n / n
        - start ** (n + alpha) / (n + alpha) * abs(u0) ** (p + 1) / (p + 1)
        - start ** (n + beta) / (n + beta) * abs(v0) ** (q + 1) / (q + 1)
    )
    return integrate.solve_ivp(
        rhs,
        (start, radius),
        [*_series(e, n, u0, v0, start), energy],
        method="RK45",
        rtol=settings.SHOOTING_RTOL,
        atol=settings.SHOOTING_ATOL,
        dense_output=True,
        events=blow_up,
    )


def _profile(e, n, radius, u0, v0, run):
    start = settings.SHOOTING_SERIES_FRACTION * radius

    def profile(r):
        r = np.asarray(r, dtype=float)
        values = run.sol(np.clip(r, start, radius))
        near = _series(e, n, u0, v0, np.minimum(r, start))
        u = np.where(r < start, near[0], values[0])
        v = np.where(r < start, near[2], values[2])
        return u, v

    return profile


def _shot(e, n, radius, factor, u0, v0, run):
    u_end, v_end = run.y[0, -1], run.y[2, -1]
    return Shot(
        u0=float(u0),
        v0=float(v0),
        level=float(factor * run.y[4, -1]),
        mismatch=float(np.hypot(u_end / u0, v_end / v0)),
        radius=radius,
        profile=_profile(e, n, radius, u0, v0, run),
    )


def _is_positive(shot):
    r = np.linspace(0, shot.radius, 401)[:-1]
    u, v = shot(r)
    return bool(np.all(u > 0) and np.all(v > 0))


def one_mode_estimate(e: ExponentPair, domain) -> tuple[float, float]:
    """(u(0), v(0)) of the Galerkin solution (a phi_1, b phi_1) with one mode.

    b^{pq-1} = lambda^{p+1} / (c_p c_q^p) and a = c_q b^q / lambda, where
    lambda = lambda_1 + c and c_p = int |x|^alpha phi_1^{p+1}.
    """
    basis = build_basis(domain, 1)
    phi_1 = Field.mode(basis, 1)
    eigenvalue = basis.eigenvalues[0] + e.potential
    c_p = basis.integrate(basis.weight(e.alpha) * np.abs(phi_1.nodal) ** (e.p + 1))
    c_q = basis.integrate(basis.weight(e.beta) * np.abs(phi_1.nodal) ** (e.q + 1))
    b = (eigenvalue ** (e.p + 1) / (c_p * c_q**e.p)) ** (1 / (e.pq - 1))
    a = c_q * b**e.q / eigenvalue
    peak = abs(float(phi_1.evaluate(domain.center[None, :])[0]))
    return a * peak, b * peak


def scalar_shooting(e: ExponentPair, domain) -> Shot:
    """Positive radial ground state of the scalar problem -Delta u + c u = |x|^alpha |u|^{p-1} u.

    Scans u(0) geometrically upward from a small value and refines the first
    sign change of u(R) by Brent's method. ``level`` is the scalar energy
    int |grad u|^2/2 + c u^2/2 - |x|^alpha |u|^{p+1}/(p+1).

    Raises:
        ValueError: If the exponents are not diagonal.
        OracleError: If u(R) never changes sign over the scan.
    """
    if not e.is_diagonal:
        raise ValueError(f"Scalar shooting needs p = q and alpha = beta, got {e}")
    n, radius, factor = radial_setup(domain)
    e = e.for_dimension(n)
    guess, _ = one_mode_estimate(e, domain)

    def boundary(u0):
        run = _integrate(e, n, radius, u0, u0)
        return run.y[0, -1] / u0

    heights = guess * 1.2 ** np.arange(-25, 41)
    previous = None
    for low, high in zip(heights[:-1], heights[1:]):
        previous = boundary(low) if previous is None else previous
        current = boundary(high)
        if previous > 0 >= current:
            u0 = optimize.brentq(boundary, low, high, xtol=1e-14 * high, rtol=4 * np.finfo(float).eps)
            run = _integrate(e, n, radius, u0, u0)
            if run.status != 0:
                break
            shot = _shot(e, n, radius, factor, u0, u0, run)
            # the system energy of (u, u) is twice the scalar energy
            shot = Shot(shot.u0, shot.v0, shot.level / 2, shot.mismatch / np.sqrt(2), shot.radius, shot.profile)
            logger.info("Scalar shot: u(0) = %.12g, level %.12g", u0, shot.level)
            return shot
        previous = current
    raise OracleError("u(R) does not change sign over the scanned heights", framework=Framework.SHOOTING)


def system_shooting(e: ExponentPair, domain) -> tuple[Shot, int]:
    """Two-parameter shooting on (log u(0), log v(0)) from several starts.

    Returns:
        tuple[Shot, int]: The positive shot of least energy (ties within 1e-9
        go to the first found) and the number of ODE solves.

    Raises:
        OracleError: If no start converges to a positive shot.
    """
    n, radius, factor = radial_setup(domain)
    e = e.for_dimension(n)
    a, b = one_mode_estimate(e, domain)
    evaluations = 0

    def mismatch(x):
        nonlocal evaluations
        evaluations += 1
        u0, v0 = np.exp(np.clip(x, -50, 50))
        run = _integrate(e, n, radius, u0, v0)
        return [run.y[0, -1] / u0, run.y[2, -1] / v0]

    best = None
    for multiplier in settings.SHOOTING_STARTS:
        solution = optimize.root(
            mismatch, np.log([multiplier * a, multiplier * b]), method="hybr", options={"xtol": 1e-13}
        )
        if not solution.success:
            logger.debug("Shooting start x%g failed: %s", multiplier, solution.message)
            continue
        u0, v0 = np.exp(solution.x)
        run = _integrate(e, n, radius, u0, v0)
        if run.status != 0:
            continue
        shot = _shot(e, n, radius, factor, u0, v0, run)
        if not _is_positive(shot):
            logger.debug("Shooting start x%g reached a sign-changing solution", multiplier)
            continue
        if best is None or shot.level < best.level - 1e-9 * abs(best.level):
            best = shot
    if best is None:
        raise OracleError(
            f"No positive shot found from starts {settings.SHOOTING_STARTS}", framework=Framework.SHOOTING
        )
    return best, evaluations


def solve_shooting(e: ExponentPair, domain, cfg: FrameworkConfig | None = None, basis=None) -> FrameworkResult:
    """Ground state on an interval or a disk by shooting, as a framework result.

    Diagonal exponents use the one-parameter scalar shot with u = v. The
    profile is projected onto ``basis`` (default: DEFAULT_MODES modes, radial
    on the disk); the reported residual is the relative boundary mismatch.

    Raises:
        UnsupportedRegimeError: If (H1) fails or pq = 1.
        DomainError: On rectangles or a basis on another domain.
        OracleError: If no positive shot is found.
    """
    cfg = cfg or FrameworkConfig(framework=Framework.SHOOTING)
    n, _, _ = radial_setup(domain)
    e = e.for_dimension(n)
    require(e, "H1", "The shooting oracle")
    if e.pq == 1:
        raise UnsupportedRegimeError(f"The shooting oracle needs pq != 1, got {e}", "pq=1")
    if basis is None:
        basis = build_basis(domain, settings.DEFAULT_MODES, radial_only=domain.kind is DomainKind.DISK)
    elif basis.domain != domain:
        raise DomainError(f"The basis lives on {basis.domain}, the shot on {domain}")

    if e.is_diagonal:
        shot = scalar_shooting(e, domain)
        level, evaluations = 2 * shot.level, 1
    else:
        shot, evaluations = system_shooting(e, domain)
        level = shot.level

    u_nodal, v_nodal = shot(basis.radius)
    pair = SolutionPair(
        u=Field.from_nodal(basis, u_nodal),
        v=Field.from_nodal(basis, v_nodal),
        exponents=e,
        energy=level,
        residual=shot.mismatch,
        provenance=Framework.SHOOTING,
    )
    converged = shot.mismatch <= cfg.tolerance
    logger.info("shooting_oracle: c = %.12g, mismatch %.3e", level, shot.mismatch)
    return FrameworkResult(
        framework=Framework.SHOOTING,
        level=level,
        solution=pair,
        iterations=evaluations,
        converged=converged,
        tolerance=cfg.tolerance,
        diagnostics={
            "u0": shot.u0,
            "v0": shot.v0,
            "mismatch": shot.mismatch,
            "radius": shot.radius,
            "diagonal": e.is_diagonal,
        },
    )
