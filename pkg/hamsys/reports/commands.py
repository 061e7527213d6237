"""Command-line subcommands.

Every subcommand returns a process exit code: 0 when everything it verified
passes, 1 on a verification or numerical failure and 2 on a usage or configuration
error.
"""
import argparse
import logging
import sys

from hamsys import settings
from hamsys.exceptions import CapacityError, ConfigError, DomainError, HamSysError, UnsupportedRegimeError
from hamsys.functionals.models import Framework
from hamsys.problem.models import Regime
from hamsys.problem.utils import classify
from hamsys.reports import pipelines
from hamsys.reports.config import apply_overrides, float_list, int_list, load_config
from hamsys.reports.models import RunConfig
from hamsys.spectral.models import Domain

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# errors in what the user asked for; every other failure of a run exits with EXIT_FAIL
USAGE_ERRORS = (ConfigError, DomainError, CapacityError, FileNotFoundError)

# hypotheses each framework needs, in the order they are checked
REQUIREMENTS = {
    Framework.DUAL: ("H3",),
    Framework.INVERSION: ("H1", "pq=1"),
    Framework.LS_REDUCTION: ("H4",),
    Framework.SHOOTING: ("H1", "pq=1"),
}


def refusal(classification, framework) -> str | None:
    """The first hypothesis ``framework`` needs that fails, or None."""
    for hypothesis in REQUIREMENTS[Framework(framework)]:
        if hypothesis == "pq=1":
            if classification.regime is Regime.LINEAR:
                return hypothesis
        elif not classification.holds(hypothesis):
            return hypothesis
    return None


def _domain(text):
    try:
        return Domain.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _frameworks(text):
    try:
        return tuple(Framework.parse_list(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"unknown framework in {text!r}") from exc


def _common() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="INI run configuration; flags override its values.")
    parent.add_argument("--out", dest="output_dir", help="Directory for the run artifacts.")
    parent.add_argument("--seed", type=int, help="Seed of every random choice.")
    parent.add_argument("--modes", type=int, help="Number of eigenmodes M.")
    parent.add_argument("--frameworks", type=_frameworks, help="Comma separated frameworks, or 'all'.")
    parent.add_argument("--p", type=float, help="Exponent p.")
    parent.add_argument("--q", type=float, help="Exponent q.")
    parent.add_argument("--domain", type=_domain, help="Domain as kind:lengths, e.g. interval:pi or disk:1.")
    parent.add_argument("--verbose", action="store_true", help="Log every solver iteration.")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hamsys", description="Ground states of Hamiltonian elliptic systems.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    classify_parser = subparsers.add_parser(
        "classify", parents=[common], help="Print the hypothesis flags and the admissible frameworks."
    )
    classify_parser.add_argument("--dimension", type=int, help="Space dimension N; the domain's by default.")
    classify_parser.set_defaults(handler=cmd_classify)

    solve_parser = subparsers.add_parser("solve", parents=[common], help="Solve, verify and write a run directory.")
    solve_parser.set_defaults(handler=cmd_solve)

    verify_parser = subparsers.add_parser("verify", parents=[common], help="Re-verify a persisted run directory.")
    verify_parser.add_argument("directory", help="A directory written by 'solve'.")
    verify_parser.set_defaults(handler=cmd_verify)

    sweep_parser = subparsers.add_parser("henon-sweep", parents=[common], help="Probe symmetry breaking on a disk.")
    sweep_parser.add_argument(
        "--weights", type=float_list, dest="henon_weights", help="Comma separated alpha = beta values."
    )
    sweep_parser.set_defaults(handler=cmd_henon_sweep)

    convergence_parser = subparsers.add_parser("convergence", parents=[common], help="Levels against mode count.")
    convergence_parser.add_argument("--mode-list", type=int_list, dest="mode_list", help="Comma separated mode counts.")
    convergence_parser.set_defaults(handler=cmd_convergence)

    nehari_parser = subparsers.add_parser(
        "demo-nehari", parents=[common], help="Degeneracy of the standard Nehari set."
    )
    nehari_parser.set_defaults(handler=cmd_demo_nehari)
    return parser


def config_from_args(args) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    overrides = {
        name: getattr(args, name, None)
        for name in ("output_dir", "seed", "modes", "frameworks", "p", "q", "domain", "henon_weights", "mode_list")
    }
    return apply_overrides(config, **overrides)


def cmd_classify(args, config: RunConfig) -> int:
    e = config.exponents
    if args.dimension is not None:
        e = e.for_dimension(args.dimension)
    classification = classify(e)
    print(e)
    print(classification.describe())
    for framework in Framework:
        hypothesis = refusal(classification, framework)
        print(f"  {framework.value:<16} {'admissible' if hypothesis is None else f'refused ({hypothesis})'}")
    return EXIT_PASS


def _print_reports(reports) -> bool:
    for report in reports.values():
        print(report.as_table())
        print()
    return all(report.passed for report in reports.values())


def cmd_solve(args, config: RunConfig) -> int:
    manifest = pipelines.run(config)
    for label, refused in manifest.refusals.items():
        print(f"{label}: refused ({refused['hypothesis']})")
    for label, result in manifest.results.items():
        print(f"{label}: c = {result['level']:.{settings.HUMAN_DIGITS}g}, converged {result['converged']}")
    print()
    for report in manifest.verification.values():
        print(f"{'PASS' if report['passed'] else 'FAIL'} {report['subject']}")
    print("overall: " + ("PASS" if manifest.passed else "FAIL"))
    return EXIT_PASS if manifest.passed else EXIT_FAIL


def cmd_verify(args, config: RunConfig) -> int:
    passed = _print_reports(pipelines.verify(args.directory))
    print("overall: " + ("PASS" if passed else "FAIL"))
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_henon_sweep(args, config: RunConfig) -> int:
    rows, fits = pipelines.henon_sweep(config)
    digits = settings.HUMAN_DIGITS
    print(f"{'alpha':>8} {'c_rad':>14} {'c_full':>14} {'breaking':>9} {'foliated':>12}")
    for row in rows:
        print(
            f"{row.alpha:>8g} {row.c_rad:>14.{digits}g} {row.c_full:>14.{digits}g} "
            f"{str(row.breaking):>9} {row.foliated_deficit:>12.3g}"
        )
    for name, fit in fits.items():
        print(f"{name}: slope {fit.slope:.{digits}g} (reference {fit.reference:.{digits}g})")
    foliated = all(row.foliated_deficit <= settings.FOLIATED_DEFICIT_TOLERANCE for row in rows if row.breaking)
    return EXIT_PASS if foliated else EXIT_FAIL


def cmd_convergence(args, config: RunConfig) -> int:
    table = pipelines.convergence_study(config)
    digits = settings.HUMAN_DIGITS
    for row in table.rows:
        print(f"{row.framework.value:<14} M = {row.modes:<5} c = {row.level:.{digits + 6}g}  gap {row.gap:.3g}")
    frameworks = list(dict.fromkeys(row.framework for row in table.rows))
    decays = {framework: table.decays_spectrally(framework) for framework in frameworks}
    for framework, decay in decays.items():
        print(f"{framework.value}: {'spectral' if decay else 'slow'} decay, orders {table.orders(framework)}")
    return EXIT_PASS if all(decays.values()) else EXIT_FAIL


def cmd_demo_nehari(args, config: RunConfig) -> int:
    rows = pipelines.nehari_demo(config)
    digits = settings.HUMAN_DIGITS
    for row in rows:
        if row.admissible:
            print(f"lam = {row.lam:<8g} t = {row.t:.{digits}g}  norm = {row.norm:.{digits}g}")
        else:
            print(f"lam = {row.lam:<8g} {row.note}")
    norms = [row.norm for row in rows if row.admissible]
    decreasing = len(norms) == len(rows) and all(b < a for a, b in zip(norms, norms[1:]))
    return EXIT_PASS if decreasing else EXIT_FAIL


def execute(argv=None) -> int:
    """Parse ``argv`` and run the subcommand; argparse itself exits with 2 on bad flags."""
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger("hamsys").setLevel(logging.DEBUG)
    try:
        config = config_from_args(args)
        return args.handler(args, config)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedRegimeError as exc:
        print(f"refused ({exc.hypothesis}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HamSysError, ValueError, ArithmeticError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
