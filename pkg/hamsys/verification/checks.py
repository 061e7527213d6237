"""Executable checks of the identities satisfied at ground states.

Every check measures a nonnegative defect and compares it with a tolerance
from ``settings``; loosening a tolerance can only turn a failure into a pass.
"""
import logging
from itertools import combinations

import numpy as np

from hamsys import settings
from hamsys.exceptions import InsufficientResultsError, ProblemMismatchError, UnconvergedResultError
from hamsys.problem.pohozaev import pohozaev_residual, pohozaev_terms
from hamsys.spectral.models import DomainKind
from hamsys.spectral.utils import power_integral
from hamsys.symmetry.rearrangement import radial_deficit
from hamsys.verification.models import Check, VerificationReport

logger = logging.getLogger(__name__)

CHECKS = ("balance", "energy_identity", "pohozaev", "sign", "radial", "residual")


def _relative(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


def check_balance(result, e) -> Check:
    """int |x|^alpha |u|^{p+1} = int |x|^beta |v|^{q+1}."""
    u_power = power_integral(result.u, e.p + 1, e.alpha)
    v_power = power_integral(result.v, e.q + 1, e.beta)
    return Check("balance", _relative(u_power, v_power), settings.TOLERANCES["identity"])


def check_energy_identity(result, e) -> Check:
    """I(u, v) = (pq - 1) / ((p + 1)(q + 1)) int |x|^alpha |u|^{p+1}."""
    expected = (e.pq - 1) / ((e.p + 1) * (e.q + 1)) * power_integral(result.u, e.p + 1, e.alpha)
    return Check("energy_identity", _relative(result.solution.energy, expected), settings.TOLERANCES["identity"])


def check_pohozaev(result, e) -> Check:
    """Largest Pohozaev residual over ``settings.POHOZAEV_PARAMETERS``, relative to int |x|^alpha |u|^{p+1}."""
    scale = abs(pohozaev_terms(result.u, result.v, e)["u_power"])
    residual = max(pohozaev_residual(result.solution, a, e) for a in settings.POHOZAEV_PARAMETERS)
    return Check("pohozaev", residual / scale if scale else np.inf, settings.POHOZAEV_TOLERANCE)


def check_sign(result, e) -> Check:
    """After flipping the pair so that int u >= 0, how far u and v dip below zero relative to their maxima."""
    basis = result.basis
    u, v = result.u.nodal, result.v.nodal
    if basis.integrate(u) < 0:
        u, v = -u, -v
    dips = [max(-w.min(), 0.0) / w.max() if w.max() > 0 else np.inf for w in (u, v)]
    return Check("sign", float(max(dips)), settings.SIGN_TOLERANCE)


def check_radial(result, e) -> Check:
    return Check("radial", radial_deficit(result.u), settings.RADIAL_DEFICIT_TOLERANCE)


def check_residual(result, e) -> Check:
    return Check("residual", result.solution.residual, result.tolerance)


_CHECKERS = {
    "balance": check_balance,
    "energy_identity": check_energy_identity,
    "pohozaev": check_pohozaev,
    "sign": check_sign,
    "radial": check_radial,
    "residual": check_residual,
}


def default_checks(result) -> list[str]:
    """Every check that applies: the radial one only for unweighted problems on an interval or a disk."""
    e = result.exponents
    ball = result.basis.domain.kind is not DomainKind.RECTANGLE
    return [name for name in CHECKS if name != "radial" or (ball and e.alpha == 0 and e.beta == 0)]


def _require_converged(result):
    if not result.converged:
        raise UnconvergedResultError(
            f"Refusing to verify an unconverged {result.framework.value} run "
            f"(residual {result.solution.residual:.3e} > {result.tolerance:.3e})"
        )


def verify_solution(result, e=None, checks=None) -> VerificationReport:
    """Run the selected checks on a converged result.

    Args:
        result (FrameworkResult): A converged solver run.
        e (ExponentPair): The exponents to check against; defaults to the result's own.
        checks (list[str]): Names from ``CHECKS``; :func:`default_checks` when omitted.

    Raises:
        UnconvergedResultError: If ``result`` did not converge.
        ProblemMismatchError: If ``e`` differs from the exponents the result was computed for.
        ValueError: For an unknown check name.
        DomainError: If ``radial`` is requested on a rectangle.
    """
    _require_converged(result)
    if e is None:
        e = result.exponents
    elif e.for_dimension(result.exponents.dimension) != result.exponents:
        raise ProblemMismatchError(f"The result solves {result.exponents}, not {e}")
    names = default_checks(result) if checks is None else list(checks)
    unknown = sorted(set(names) - set(CHECKS))
    if unknown:
        raise ValueError(f"Unknown checks {unknown}; choose from {list(CHECKS)}")

    report = VerificationReport(
        subject=f"{result.framework.value}: {e} on {result.basis.domain}",
        checks=[_CHECKERS[name](result, e) for name in names],
        summary={"level": float(result.level)},
    )
    if report.passed:
        logger.info("%s: all %d checks pass", report.subject, len(report.checks))
    else:
        logger.warning("%s: failed %s", report.subject, ", ".join(report.failures))
    return report


def _label(results, index) -> str:
    name = results[index].framework.value
    duplicates = sum(result.framework.value == name for result in results)
    return name if duplicates == 1 else f"{name}#{index}"


def cross_framework_report(results) -> VerificationReport:
    """Pairwise agreement of ground levels and of int |x|^alpha |u|^{p+1} across frameworks.

    Every result carrying a ``fractional_energy`` diagnostic is also checked
    against its direct energy I(u, v).

    Raises:
        InsufficientResultsError: With fewer than two results.
        UnconvergedResultError: If any result did not converge.
        ProblemMismatchError: If the results solve different problems or live on different domains.
    """
    results = list(results)
    if len(results) < 2:
        raise InsufficientResultsError(f"A cross-framework report needs two results or more, got {len(results)}")
    for result in results:
        _require_converged(result)
    reference = results[0]
    for result in results[1:]:
        if result.exponents != reference.exponents or result.basis.domain != reference.basis.domain:
            raise ProblemMismatchError(
                f"{result.framework.value} solves {result.exponents} on {result.basis.domain}, "
                f"{reference.framework.value} solves {reference.exponents} on {reference.basis.domain}"
            )

    e = reference.exponents
    labels = [_label(results, k) for k in range(len(results))]
    levels = [float(result.level) for result in results]
    powers = [power_integral(result.u, e.p + 1, e.alpha) for result in results]
    tolerance = settings.TOLERANCES["level"]
    checks = []
    for i, j in combinations(range(len(results)), 2):
        checks.append(Check(f"level {labels[i]}/{labels[j]}", _relative(levels[i], levels[j]), tolerance))
        checks.append(Check(f"power {labels[i]}/{labels[j]}", _relative(powers[i], powers[j]), tolerance))
    for label, result in zip(labels, results):
        if "fractional_energy" in result.diagnostics:
            value = result.diagnostics["fractional_energy"]
            checks.append(Check(f"fractional {label}", _relative(value, result.solution.energy), tolerance))

    report = VerificationReport(
        subject=f"cross-framework: {e} on {reference.basis.domain}",
        checks=checks,
        summary={
            "level_min": min(levels),
            "level_max": max(levels),
            "level_mean": float(np.mean(levels)),
        },
    )
    logger.info("%s: level spread %.3e", report.subject, max(levels) - min(levels))
    return report
