"""Tests for the command line."""
import logging

import pytest

from hamsys import settings
from hamsys.exceptions import CapacityError, NoAscentDirectionError
from hamsys.functionals.models import Framework
from hamsys.manage import main
from hamsys.problem import ExponentPair, classify
from hamsys.reports import pipelines
from hamsys.reports.commands import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, refusal


def test_classify_reports_the_critical_hyperbola(capsys):
    code = main(["classify", "--p", "5", "--q", "5", "--dimension", "3"])

    out = capsys.readouterr().out
    assert code == EXIT_PASS
    assert "on critical hyperbola" in out
    assert "refused (H1)" in out
    assert "admissible" not in out


@pytest.mark.parametrize(
    "p, q, framework, hypothesis",
    [
        (3, 3, Framework.LS_REDUCTION, None),
        (0.5, 1.5, Framework.DUAL, "H3"),
        # sublinear on one side only
        (0.5, 3, Framework.LS_REDUCTION, "H4"),
        (0.5, 2, Framework.INVERSION, "pq=1"),
        (0.5, 2, Framework.SHOOTING, "pq=1"),
    ],
)
def test_refusal_names_the_failing_hypothesis(p, q, framework, hypothesis):
    assert refusal(classify(ExponentPair(p, q)), framework) == hypothesis


def test_solve_writes_a_run_directory(tmp_path, capsys):
    """
    GIVEN (2, 3) on (0, pi) and the inversion method
    WHEN 'solve' runs with an output directory
    THEN it exits 0 after writing the manifest, and 'verify' passes on the directory
    """
    out = tmp_path / "run"

    code = main(["solve", "--p", "2", "--q", "3", "--modes", "64", "--frameworks", "inversion", "--out", str(out)])

    assert code == EXIT_PASS
    assert (out / "manifest.json").exists()
    assert "overall: PASS" in capsys.readouterr().out
    assert main(["verify", str(out)]) == EXIT_PASS


def test_solve_failing_a_check_exits_one(tmp_path):
    config = tmp_path / "run.ini"
    config.write_text("[solver]\nframeworks = inversion\nmax_iter = 1\n")
    assert main(["solve", "--config", str(config), "--modes", "16", "--out", str(tmp_path / "run")]) == EXIT_FAIL


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--frameworks", "newton"],
        # no subcommand at all
        [],
        ["solve", "--modes", "many"],
    ],
)
def test_bad_flags_exit_two(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == EXIT_USAGE


def test_config_errors_exit_two(tmp_path, capsys):
    config = tmp_path / "run.ini"
    config.write_text("[problem]\nr = 3\n")
    assert main(["classify", "--config", str(config)]) == EXIT_USAGE
    assert "problem.r" in capsys.readouterr().err


def test_solve_refused_by_every_framework_exits_two(tmp_path, capsys):
    assert main(["solve", "--p", "0.5", "--q", "2", "--out", str(tmp_path)]) == EXIT_USAGE
    assert "refused" in capsys.readouterr().err


def test_verify_without_a_run_exits_two(tmp_path):
    assert main(["verify", str(tmp_path)]) == EXIT_USAGE


def test_nehari_demo_exits_zero(tmp_path):
    assert main(["demo-nehari", "--modes", "16", "--out", str(tmp_path)]) == EXIT_PASS
    assert (tmp_path / "nehari.csv").exists()


def test_convergence_with_one_mode_count_exits_two(tmp_path, capsys):
    argv = ["convergence", "--frameworks", "inversion", "--mode-list", "16", "--out", str(tmp_path)]
    assert main(argv) == EXIT_USAGE
    assert "two mode counts" in capsys.readouterr().err


@pytest.mark.parametrize(
    "error, code",
    [
        (CapacityError("M = 5000 exceeds the cap"), EXIT_USAGE),
        (FileNotFoundError("no such file"), EXIT_USAGE),
        (NoAscentDirectionError("no ascent direction", framework=Framework.DUAL), EXIT_FAIL),
        # a numerical failure deep inside a solver, not a bad request
        (ValueError("Energy must be finite, got nan"), EXIT_FAIL),
        (FloatingPointError("overflow"), EXIT_FAIL),
    ],
)
def test_errors_map_to_exit_codes(tmp_path, monkeypatch, capsys, error, code):
    """
    GIVEN a run that raises ``error`` part way through
    WHEN 'solve' is executed
    THEN request errors exit 2 and numerical failures exit 1, both with a message on stderr
    """

    def fail(config):
        raise error

    monkeypatch.setattr(pipelines, "run", fail)

    assert main(["solve", "--p", "2", "--q", "3", "--out", str(tmp_path)]) == code
    assert capsys.readouterr().err.splitlines()[-1].startswith("failed" if code == EXIT_FAIL else "error")


def test_main_installs_the_logging_settings():
    main(["classify", "--p", "3", "--q", "3"])
    handlers = logging.getLogger("hamsys").handlers
    assert [type(handler) for handler in handlers] == [logging.StreamHandler]
    assert handlers[0].formatter._fmt == settings.LOGGING["formatters"]["simple"]["format"]
