"""Run configuration, pipelines, persistence and the command line."""
from hamsys.reports.config import apply_overrides, load_config, parse_config
from hamsys.reports.io import read_field, read_result, write_field, write_manifest, write_result, write_trace
from hamsys.reports.models import ConvergenceRow, ConvergenceTable, RunConfig, RunManifest
from hamsys.reports.pipelines import convergence_study, henon_sweep, nehari_demo, run, verify

__all__ = [
    "ConvergenceRow",
    "ConvergenceTable",
    "RunConfig",
    "RunManifest",
    "apply_overrides",
    "convergence_study",
    "henon_sweep",
    "load_config",
    "nehari_demo",
    "parse_config",
    "read_field",
    "read_result",
    "run",
    "verify",
    "write_field",
    "write_manifest",
    "write_result",
    "write_trace",
]
