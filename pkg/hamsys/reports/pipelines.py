"""The pipelines behind the command-line subcommands.

Each pipeline takes a :class:`RunConfig`, writes its artifacts below
``config.output_dir`` and returns what it computed.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

from hamsys import settings
from hamsys.exceptions import ConfigError, UnsupportedRegimeError
from hamsys.functionals.models import Framework
from hamsys.problem.utils import classify
from hamsys.reports import io
from hamsys.reports.models import ConvergenceRow, ConvergenceTable, RunConfig, RunManifest
from hamsys.solvers import nehari_degeneracy_demo, solve
from hamsys.spectral.models import Field
from hamsys.symmetry.probe import fit_growth, growth_exponents, symmetry_breaking_probe
from hamsys.verification.checks import cross_framework_report, verify_solution
from hamsys.verification.models import Check, VerificationReport

logger = logging.getLogger(__name__)

NEHARI_LAMS = (1.0, 10.0, 100.0, 1000.0)
SWEEP_HEADER = ["alpha", "beta", "c_rad", "c_full", "breaking_flag", "foliated_deficit"]
CONVERGENCE_HEADER = ["framework", "modes", "level", "gap"]
NEHARI_HEADER = ["lam", "t", "norm", "identity_residual", "note"]


def jobs(config: RunConfig) -> list[tuple[str, Framework, float | None]]:
    """(label, framework, lam) of every solver run; the reduction runs once per lambda."""
    planned = []
    for framework in config.frameworks:
        if framework is Framework.LS_REDUCTION and len(config.lams) > 1:
            planned += [(f"{framework.value}_lam{lam:g}", framework, lam) for lam in config.lams]
        else:
            planned.append((framework.value, framework, None))
    return planned


def _timed_solve(config, framework, lam, basis):
    start = time.perf_counter()
    result = solve(framework, config.exponents, basis, config.framework_config(framework, lam))
    return result, time.perf_counter() - start


def _unconverged_report(label, result) -> VerificationReport:
    return VerificationReport(
        subject=f"{label}: not converged after {result.iterations} iterations",
        checks=[Check("residual", result.solution.residual, result.tolerance)],
        summary={"level": float(result.level)},
    )


def verify_results(results: dict, checks=None) -> dict[str, VerificationReport]:
    """One report per labelled result, plus ``cross`` when two or more converged."""
    reports = {}
    for label, result in results.items():
        if result.converged:
            reports[label] = verify_solution(result, checks=checks)
        else:
            logger.warning("%s did not converge; reporting its residual only", label)
            reports[label] = _unconverged_report(label, result)
    converged = [result for result in results.values() if result.converged]
    if len(converged) > 1:
        reports["cross"] = cross_framework_report(converged)
    return reports


def run(config: RunConfig) -> RunManifest:
    """Solve with every selected framework, verify, and write the run directory.

    Frameworks whose hypothesis fails are recorded under ``refusals`` with the
    failing flag; the others run concurrently.

    Raises:
        UnsupportedRegimeError: If every framework refuses the exponents.
        ConvergenceError: Propagated from a solver that failed for good.
    """
    e = config.exponents
    classification = classify(e)
    logger.info("%s: %s", e, classification.describe())
    basis = config.basis()
    planned = jobs(config)

    with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
        futures = [
            (label, executor.submit(_timed_solve, config, framework, lam, basis)) for label, framework, lam in planned
        ]
        results, refusals, timings = {}, {}, {}
        for label, future in futures:
            try:
                results[label], timings[label] = future.result()
            except UnsupportedRegimeError as exc:
                logger.warning("%s refused: %s", label, exc)
                refusals[label] = {"hypothesis": exc.hypothesis, "message": str(exc)}

    if not results:
        raise UnsupportedRegimeError(
            f"Every framework refused {e}: {', '.join(sorted({r['hypothesis'] for r in refusals.values()}))}",
            next(iter(refusals.values()))["hypothesis"],
        )

    reports = verify_results(results, config.checks)
    directory = Path(config.output_dir)
    artifacts = {label: io.write_result(directory, label, result) for label, result in results.items()}
    manifest = RunManifest(
        config=config.to_dict(),
        classification=classification.to_dict(),
        results={label: result.to_dict() for label, result in results.items()},
        refusals=refusals,
        verification={label: report.to_dict() for label, report in reports.items()},
        timings=timings,
        artifacts=artifacts,
    )
    io.write_manifest(directory, manifest)
    logger.info("Run written to %s: %s", directory, "PASS" if manifest.passed else "FAIL")
    return manifest


def verify(directory) -> dict[str, VerificationReport]:
    """Re-verify the results persisted in a run directory.

    Raises:
        FileNotFoundError: If the directory holds no manifest.
    """
    directory = Path(directory)
    manifest = RunManifest.from_dict(io.read_json(directory / "manifest.json"))
    results = {label: io.read_result(directory, files) for label, files in manifest.artifacts.items()}
    return verify_results(results, manifest.config.get("checks"))


def henon_sweep(config: RunConfig):
    """Probe symmetry breaking for alpha = beta over ``config.henon_weights`` on a disk.

    Writes ``henon_sweep.csv`` and ``henon_fit.json``; the fits are omitted when
    fewer than two weights are positive.

    Returns:
        tuple[list[BreakingRow], dict[str, GrowthFit]]
    """
    basis = config.basis()
    rows = []
    for weight in config.henon_weights:
        e = replace(config, alpha=weight, beta=weight).exponents
        rows.append(symmetry_breaking_probe(e, basis, config.framework_config(Framework.INVERSION)))

    directory = Path(config.output_dir)
    io.write_rows(directory / "henon_sweep.csv", SWEEP_HEADER, (row.as_row() for row in rows))
    fits = {}
    if sum(weight > 0 for weight in config.henon_weights) >= 2:
        radial_reference, full_reference = growth_exponents(config.exponents.for_dimension(2))
        weights = [row.alpha for row in rows]
        fits = {
            "c_rad": fit_growth(weights, [row.c_rad for row in rows], radial_reference),
            "c_full": fit_growth(weights, [row.c_full for row in rows], full_reference),
        }
    io.write_json(
        directory / "henon_fit.json",
        {"rows": [row.to_dict() for row in rows], "fits": {name: fit.to_dict() for name, fit in fits.items()}},
    )
    if not any(row.breaking for row in rows):
        logger.info("No symmetry breaking over weights %s", list(config.henon_weights))
    return rows, fits


def convergence_study(config: RunConfig, mode_list=None) -> ConvergenceTable:
    """Levels c(M) of the Galerkin frameworks over ``mode_list`` and their gaps to the largest M.

    The shooting oracle does not depend on M and is skipped. Writes ``convergence.csv``.

    Raises:
        ConfigError: With fewer than two mode counts or without a Galerkin framework.
        UnsupportedRegimeError: If every framework refuses the exponents.
    """
    mode_list = sorted(int(m) for m in (config.mode_list if mode_list is None else mode_list))
    if len(mode_list) < 2:
        raise ConfigError(f"A convergence study needs at least two mode counts, got {mode_list}")
    e = config.exponents
    rows = []
    refused = None
    for framework in config.frameworks:
        if framework is Framework.SHOOTING:
            continue
        try:
            levels = [solve(framework, e, config.basis(m), config.framework_config(framework)).level for m in mode_list]
        except UnsupportedRegimeError as exc:
            logger.warning("%s refused: %s", framework.value, exc)
            refused = exc
            continue
        rows += [
            ConvergenceRow(framework, m, level, abs(level - levels[-1])) for m, level in zip(mode_list, levels)
        ]
    if not rows:
        raise refused or ConfigError("A convergence study needs a Galerkin framework")

    table = ConvergenceTable(tuple(rows))
    io.write_rows(Path(config.output_dir) / "convergence.csv", CONVERGENCE_HEADER, (row.as_row() for row in rows))
    for framework in dict.fromkeys(row.framework for row in rows):
        logger.info("%s: empirical orders %s", framework.value, table.orders(framework))
    return table


def nehari_demo(config: RunConfig, lams=NEHARI_LAMS):
    """Put (t phi_1, t lam phi_1) on the standard Nehari set for each lam; writes ``nehari.csv``."""
    u = Field.mode(config.basis(), 1)
    rows = nehari_degeneracy_demo(config.exponents, u, lams)
    io.write_rows(
        Path(config.output_dir) / "nehari.csv",
        NEHARI_HEADER,
        ([row.lam, row.t, row.norm, row.identity_residual, row.note] for row in rows),
    )
    return rows
