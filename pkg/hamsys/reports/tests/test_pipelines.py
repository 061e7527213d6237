"""Tests for the run, verify, sweep, convergence and Nehari pipelines."""
import json

import numpy as np
import pytest

from hamsys.exceptions import DomainError, UnsupportedRegimeError
from hamsys.functionals.models import Framework
from hamsys.reports import io
from hamsys.reports.models import ConvergenceRow, ConvergenceTable, RunConfig, RunManifest
from hamsys.reports.pipelines import convergence_study, henon_sweep, jobs, nehari_demo, run, verify
from hamsys.spectral import Domain


@pytest.fixture
def config_factory(tmp_path):
    def create_config(**kwargs):
        kwargs.setdefault("output_dir", tmp_path / "run")
        kwargs.setdefault("modes", 16)
        return RunConfig(**kwargs)

    return create_config


def test_one_reduction_run_per_lambda(config_factory):
    config = config_factory(lams=(0.5, 1.0, 2.0))
    assert [label for label, _, _ in jobs(config)] == [
        "dual",
        "inversion",
        "ls_reduction_lam0.5",
        "ls_reduction_lam1",
        "ls_reduction_lam2",
    ]


def test_single_framework_run_writes_a_passing_manifest(config_factory):
    """
    GIVEN (2, 3) on (0, pi) with the inversion method on 64 modes
    WHEN the run pipeline executes
    THEN the manifest passes, lists the artifacts and sits in the run directory
    """
    config = config_factory(p=2, q=3, modes=64, frameworks=(Framework.INVERSION,))

    manifest = run(config)

    assert manifest.passed
    assert list(manifest.results) == ["inversion"]
    assert manifest.refusals == {}
    assert "cross" not in manifest.verification
    data = json.loads((config.output_dir / "manifest.json").read_text())
    assert data["passed"] is True
    assert data["classification"]["h3"] is True
    for name in manifest.artifacts["inversion"].values():
        assert (config.output_dir / name).exists()


@pytest.mark.slow
def test_all_frameworks_agree_on_the_cubic_pair(config_factory):
    manifest = run(config_factory(modes=24))

    assert sorted(manifest.results) == ["dual", "inversion", "ls_reduction"]
    assert all(result["converged"] for result in manifest.results.values())
    assert manifest.verification["cross"]["passed"]


def test_refused_frameworks_are_recorded(config_factory):
    config = config_factory(p=0.5, q=1.5, modes=32)

    manifest = run(config)

    assert list(manifest.results) == ["inversion"]
    assert manifest.refusals["dual"]["hypothesis"] == "H3"
    assert manifest.refusals["ls_reduction"]["hypothesis"] == "H4"


def test_run_refused_by_every_framework_raises(config_factory):
    with pytest.raises(UnsupportedRegimeError):
        run(config_factory(p=0.5, q=2))


def test_manifests_are_reproducible(config_factory, tmp_path):
    first = run(config_factory(frameworks=(Framework.INVERSION,), output_dir=tmp_path / "a")).to_dict()
    second = run(config_factory(frameworks=(Framework.INVERSION,), output_dir=tmp_path / "a")).to_dict()
    first.pop("timings")
    second.pop("timings")
    assert first == second


def test_manifest_round_trips_through_json(config_factory):
    config = config_factory(frameworks=(Framework.INVERSION,))
    manifest = run(config)
    restored = RunManifest.from_dict(io.read_json(config.output_dir / "manifest.json"))
    assert restored.passed == manifest.passed
    assert restored.artifacts == manifest.artifacts


def test_persisted_run_is_verified_again(config_factory):
    config = config_factory(p=2, q=3, modes=64, frameworks=(Framework.INVERSION,))
    manifest = run(config)

    reports = verify(config.output_dir)

    assert list(reports) == ["inversion"]
    assert reports["inversion"].to_dict() == manifest.verification["inversion"]


def test_verify_needs_a_manifest(tmp_path):
    with pytest.raises(FileNotFoundError):
        verify(tmp_path)


def test_convergence_study_needs_two_mode_counts(config_factory):
    with pytest.raises(ValueError):
        convergence_study(config_factory(frameworks=(Framework.INVERSION,)), [32])


@pytest.mark.slow
def test_levels_converge_spectrally(config_factory):
    """
    GIVEN (3, 3) on (0, pi) solved by inversion with 16, 32 and 64 modes
    WHEN the levels are compared with the 64 mode level
    THEN the gap shrinks at least tenfold per doubling
    """
    config = config_factory(frameworks=(Framework.INVERSION,))

    table = convergence_study(config, [16, 32, 64])

    assert [row.modes for row in table.rows] == [16, 32, 64]
    assert table.rows[-1].gap == 0.0
    assert table.decays_spectrally(Framework.INVERSION)
    assert (config.output_dir / "convergence.csv").exists()


@pytest.mark.parametrize(
    "gaps, decays",
    [
        ([1e-3, 1e-5], True),
        # at rounding level further doublings cannot gain
        ([1e-12, 1e-12], True),
        ([1e-3, 5e-4], False),
    ],
)
def test_spectral_decay_criterion(gaps, decays):
    rows = [ConvergenceRow(Framework.DUAL, 16 * 2**k, 1.0 + gap, gap) for k, gap in enumerate(gaps)]
    rows.append(ConvergenceRow(Framework.DUAL, 16 * 2 ** len(gaps), 1.0, 0.0))
    assert ConvergenceTable(tuple(rows)).decays_spectrally("dual") is decays


def test_orders_are_log2_of_gap_ratios():
    rows = tuple(ConvergenceRow(Framework.INVERSION, m, 1.0, gap) for m, gap in [(16, 4e-4), (32, 1e-4), (64, 0.0)])
    assert ConvergenceTable(rows).orders("inversion") == pytest.approx([2.0])


def test_nehari_demo_writes_decreasing_norms(config_factory):
    config = config_factory()

    rows = nehari_demo(config)

    norms = [row.norm for row in rows]
    assert [row.lam for row in rows] == [1.0, 10.0, 100.0, 1000.0]
    assert all(b < a for a, b in zip(norms, norms[1:]))
    assert norms[-1] < 0.1 * norms[0]
    assert len(io.read_rows(config.output_dir / "nehari.csv")) == 4


def test_henon_sweep_needs_a_disk(config_factory):
    with pytest.raises(DomainError):
        henon_sweep(config_factory(p=2, q=2, henon_weights=(0.0, 1.0)))


@pytest.mark.slow
def test_henon_sweep_breaks_symmetry_with_foliated_minimizers(config_factory):
    """
    GIVEN p = q = 2 on the unit disk with 64 modes and alpha = beta swept up to 30
    WHEN the sweep runs
    THEN the unweighted pair stays radial, some weight breaks the symmetry, and every
    nonradial minimizer is foliated about its axis to 1e-3
    """
    weights = (0.0, 10.0, 20.0, 30.0)
    config = config_factory(p=2, q=2, modes=64, domain=Domain.disk(1.0), henon_weights=weights)

    rows, fits = henon_sweep(config)

    assert [row.alpha for row in rows] == list(weights)
    assert not rows[0].breaking
    assert any(row.breaking for row in rows)
    for row in rows:
        if row.breaking:
            assert row.foliated_deficit < 1e-3
            assert row.residual <= 1e-6
    assert set(fits) == {"c_rad", "c_full"}
    table = io.read_rows(config.output_dir / "henon_sweep.csv")
    assert list(table[0]) == ["alpha", "beta", "c_rad", "c_full", "breaking_flag", "foliated_deficit"]
    assert np.isclose(float(table[1]["c_rad"]), rows[1].c_rad)
