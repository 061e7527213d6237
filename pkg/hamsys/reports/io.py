"""Persistence of fields, traces, results and manifests.

Machine files print floats with ``settings.MACHINE_DIGITS`` significant digits
so that reading them back reproduces every number exactly. A field is a CSV of
eigen-coefficients keyed by the 1-based mode index, with a JSON sidecar
describing its basis; its nodal values go to a second CSV of x[, y], value rows.
"""
import csv
import json
import logging
from pathlib import Path

import numpy as np

from hamsys import settings
from hamsys.functionals.models import Framework, SolutionPair
from hamsys.problem.models import ExponentPair
from hamsys.solvers.models import FrameworkResult, TraceRow
from hamsys.spectral.bases import build_basis
from hamsys.spectral.models import Domain, DomainKind, Field
from hamsys.spectral.utils import nodal_values

logger = logging.getLogger(__name__)

FIELD_HEADER = ["mode_index", "coefficient"]
TRACE_HEADER = ["iter", "energy", "residual", "step"]
NODAL_COORDINATES = ["x", "y"]
PROFILE_HEADER = ["r", "u", "v"]


def machine(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return f"{value:.{settings.MACHINE_DIGITS}g}"
    return str(value)


def write_rows(path, header, rows) -> Path:
    """Write a CSV with ``header`` and machine-precision floats."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([machine(value) for value in row])
    return path


def read_rows(path) -> list[dict]:
    with Path(path).open(newline="") as f:
        return list(csv.DictReader(f))


def write_json(path, data) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())


def sidecar(path) -> Path:
    return Path(path).with_suffix(".json")


def write_field(path, u: Field) -> list[Path]:
    """Write the coefficients of ``u`` and the sidecar describing its basis."""
    rows = enumerate(u.coefficients, start=1)
    return [write_rows(path, FIELD_HEADER, rows), write_json(sidecar(path), u.basis.to_dict())]


def read_field(path) -> Field:
    """Rebuild a field written by :func:`write_field` on the same basis."""
    spec = read_json(sidecar(path))
    basis = build_basis(
        Domain.from_dict(spec["domain"]),
        spec["modes"],
        radial_only=spec["radial_only"],
        quadrature_factor=spec["quadrature_factor"],
    )
    rows = sorted(read_rows(path), key=lambda row: int(row["mode_index"]))
    if [int(row["mode_index"]) for row in rows] != list(range(1, basis.mode_count + 1)):
        raise ValueError(f"{path} does not list modes 1..{basis.mode_count}")
    return Field(basis, np.array([float(row["coefficient"]) for row in rows]))


def nodal_header(basis) -> list[str]:
    return NODAL_COORDINATES[: basis.domain.dimension] + ["value"]


def write_nodal(path, w) -> Path:
    """Write the values of a field or grid function at the quadrature nodes of its basis."""
    basis = w.basis
    rows = (list(x) + [value] for x, value in zip(basis.nodes, nodal_values(w)))
    return write_rows(path, nodal_header(basis), rows)


def read_nodal(path) -> tuple[np.ndarray, np.ndarray]:
    """The nodes and values written by :func:`write_nodal`."""
    rows = read_rows(path)
    if not rows:
        raise ValueError(f"{path} holds no nodal values")
    coordinates = [name for name in NODAL_COORDINATES if name in rows[0]]
    nodes = np.array([[float(row[name]) for name in coordinates] for row in rows])
    return nodes, np.array([float(row["value"]) for row in rows])


def write_trace(path, trace) -> Path:
    return write_rows(path, TRACE_HEADER, (row.as_row() for row in trace))


def read_trace(path) -> tuple[TraceRow, ...]:
    return tuple(
        TraceRow(int(row["iter"]), float(row["energy"]), float(row["residual"]), float(row["step"]))
        for row in read_rows(path)
    )


def profile_rows(u: Field, v: Field, points: int = 201):
    """(r, u, v) along the ray from the domain centre in the first coordinate direction."""
    basis = u.basis
    center = basis.domain.center
    reach = basis.domain.lengths[0] if basis.domain.kind is DomainKind.DISK else basis.domain.lengths[0] / 2
    r = np.linspace(0.0, reach, points)
    ray = np.zeros((points, basis.domain.dimension))
    ray[:, 0] = r
    ray += center
    return zip(r, u.evaluate(ray), v.evaluate(ray))


def write_result(directory, label: str, result: FrameworkResult) -> dict:
    """Write one run's coefficients, nodal values, trace, radial profile and summary; return the file names."""
    directory = Path(directory)
    files = {
        "u": f"{label}_u.csv",
        "v": f"{label}_v.csv",
        "u_nodal": f"{label}_u_nodal.csv",
        "v_nodal": f"{label}_v_nodal.csv",
        "trace": f"{label}_trace.csv",
        "profile": f"{label}_profile.csv",
        "result": f"{label}_result.json",
    }
    write_field(directory / files["u"], result.u)
    write_field(directory / files["v"], result.v)
    write_nodal(directory / files["u_nodal"], result.u)
    write_nodal(directory / files["v_nodal"], result.v)
    write_trace(directory / files["trace"], result.trace)
    write_rows(directory / files["profile"], PROFILE_HEADER, profile_rows(result.u, result.v))
    write_json(directory / files["result"], result.to_dict())
    logger.debug("Wrote %s artifacts to %s", label, directory)
    return files


def read_result(directory, files: dict) -> FrameworkResult:
    """Rebuild a result from the artifacts listed by :func:`write_result`."""
    directory = Path(directory)
    data = read_json(directory / files["result"])
    solution = SolutionPair(
        u=read_field(directory / files["u"]),
        v=read_field(directory / files["v"]),
        exponents=ExponentPair(**data["exponents"]),
        energy=data["energy"],
        residual=data["residual"],
        provenance=Framework(data["framework"]),
    )
    return FrameworkResult(
        framework=data["framework"],
        level=data["level"],
        solution=solution,
        iterations=data["iterations"],
        trace=read_trace(directory / files["trace"]),
        converged=data["converged"],
        tolerance=data["tolerance"],
        diagnostics=data["diagnostics"],
    )


def write_manifest(directory, manifest) -> Path:
    return write_json(Path(directory) / "manifest.json", manifest.to_dict())
