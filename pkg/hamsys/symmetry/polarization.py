"""Polarization with respect to half-spaces and the symmetry deficits built on it.

For a closed half-space H and its reflection sigma_H the polarization of w is

    w_H(x) = max(w(x), w(sigma_H x)) for x in H,  min(w(x), w(sigma_H x)) otherwise,

with w extended by zero outside the domain. When sigma_H maps the quadrature
grid onto itself (reflections through the centre along a grid symmetry) the
polarization is a weight-preserving permutation of nodal values; otherwise the
mirror values come from the eigenexpansion, which needs a :class:`Field`.
"""
import logging
from functools import lru_cache

import numpy as np
from scipy import optimize, spatial

from hamsys import settings
from hamsys.exceptions import DomainError
from hamsys.spectral.models import DomainKind, Field, GridFunction
from hamsys.spectral.utils import nodal_values, solve_poisson
from hamsys.symmetry.models import HalfSpace, PolarizationComparison, SymmetryReport
from hamsys.symmetry.rearrangement import ball_basis, check_ball, nonnegative_values, radial_deficit, relative_l2

logger = logging.getLogger(__name__)

# reflected nodes within this fraction of the domain size are the same node
_MATCH_TOLERANCE = 1e-9


@lru_cache(maxsize=8)
def _node_tree(basis):
    return spatial.cKDTree(basis.nodes)


def _check_dimension(basis, H: HalfSpace):
    if H.dimension != basis.domain.dimension:
        raise DomainError(f"A half-space of dimension {H.dimension} does not fit {basis.domain}")


def _outer_radius(domain) -> float:
    return domain.lengths[0] if domain.kind is DomainKind.DISK else domain.lengths[0] / 2


def reflection_map(basis, H: HalfSpace) -> np.ndarray | None:
    """Index of the node at sigma_H(x) for every node x, -1 where sigma_H(x) leaves the domain.

    None when some mirror image inside the domain is not a node of the same weight.
    """
    _check_dimension(basis, H)
    center = basis.domain.center
    mirrored = H.reflect(basis.nodes - center) + center
    inside = basis.domain.contains(mirrored)
    index = np.full(basis.node_count, -1)
    if not inside.any():
        return index
    distance, match = _node_tree(basis).query(mirrored[inside])
    if distance.max() > _MATCH_TOLERANCE * max(basis.domain.lengths):
        return None
    if not np.allclose(basis.weights[match], basis.weights[inside], rtol=1e-10, atol=0):
        return None
    index[inside] = match
    return index


def reflected_values(w, H: HalfSpace) -> np.ndarray:
    """w(sigma_H x) at the nodes, zero where the mirror image leaves the domain.

    Raises:
        DomainError: If ``w`` is nodal data and sigma_H does not map the grid onto itself.
    """
    basis = w.basis
    index = reflection_map(basis, H)
    if index is not None:
        return np.where(index >= 0, nodal_values(w)[index], 0.0)
    if isinstance(w, Field):
        center = basis.domain.center
        return w.evaluate(H.reflect(basis.nodes - center) + center)
    raise DomainError("Nodal data can only be reflected across half-spaces that map the grid onto itself")


def polarize(w, H: HalfSpace) -> GridFunction:
    """The polarization w_H at the nodes."""
    basis = w.basis
    values = nodal_values(w)
    mirrored = reflected_values(w, H)
    inside = H.contains(basis.nodes - basis.domain.center)
    return GridFunction(basis, np.where(inside, np.maximum(values, mirrored), np.minimum(values, mirrored)))


def polarization_deficit(u, H: HalfSpace) -> float:
    """||u_H - u||_2 / ||u||_2."""
    return relative_l2(u.basis, polarize(u, H).values, nodal_values(u))


def axis_vector(axis) -> np.ndarray:
    """A unit vector in the plane from an angle or a nonzero vector."""
    vector = np.atleast_1d(np.asarray(axis, dtype=float))
    if vector.size == 1:
        return np.array([np.cos(vector[0]), np.sin(vector[0])])
    norm = np.linalg.norm(vector)
    if vector.shape != (2,) or norm == 0:
        raise ValueError(f"An axis is an angle or a nonzero planar vector, got {axis!r}")
    return vector / norm


def polarization_family(
    basis,
    axis=None,
    normals: int = settings.POLARIZATION_NORMALS,
    offsets: int = settings.POLARIZATION_OFFSETS,
) -> list[HalfSpace]:
    """Sampled half-spaces whose closure contains the domain centre.

    With ``axis`` e (disk only) the family samples the half-spaces bounded by a
    line through the centre with e in the interior: normals at angles
    theta_e + pi (k / normals - 1/2), 0 < k < normals. Without an axis every one
    of ``normals`` equally spaced normals (the two directions on an interval)
    comes with the offsets -R k / offsets, k = 0, ..., offsets - 1.

    Certificates built on the family hold at this sampling resolution only.
    """
    domain = check_ball(basis.domain)
    if axis is not None:
        if domain.kind is not DomainKind.DISK:
            raise DomainError(f"Axis families need the disk, got {domain}")
        if normals < 2:
            raise ValueError("An axis family needs at least two normals")
        direction = axis_vector(axis)
        theta = np.arctan2(direction[1], direction[0])
        return [HalfSpace.from_angle(theta + np.pi * (k / normals - 0.5)) for k in range(1, normals)]
    if normals < 1 or offsets < 1:
        raise ValueError("A family needs at least one normal and one offset")
    if domain.dimension == 1:
        directions = [(1.0,), (-1.0,)]
    else:
        angles = 2 * np.pi * np.arange(normals) / normals
        directions = list(zip(np.cos(angles), np.sin(angles)))
    radius = _outer_radius(domain)
    return [HalfSpace(direction, -radius * k / offsets) for direction in directions for k in range(offsets)]


def _disk_basis(u):
    basis = u.basis
    if basis.domain.kind is not DomainKind.DISK:
        raise DomainError(f"Foliated Schwarz symmetry needs the disk, got {basis.domain}")
    return basis


def foliated_deficit(u, axis, normals: int = settings.POLARIZATION_NORMALS) -> float:
    """max over the sampled H with e = ``axis`` in the interior of ||u_H - u||_2 / ||u||_2.

    A deficit at round-off level certifies foliated Schwarz symmetry with
    respect to e at the sampling resolution.

    Raises:
        DomainError: Off the disk, or for nodal data and a normal off the grid symmetries.
        ValueError: For the zero field.
    """
    basis = _disk_basis(u)
    return max(polarization_deficit(u, H) for H in polarization_family(basis, axis, normals))


@lru_cache(maxsize=8)
def _angular_pairs(basis) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """m and the cosine and sine mode indices of every angular Bessel pair; -1 marks a missing partner."""
    positions = {}
    for n, mode in enumerate(basis.modes):
        m, k = mode.indices
        if m > 0:
            positions.setdefault((m, k), [-1, -1])[mode.trig == "sin"] = n
    keys = sorted(positions)
    return (
        np.array([m for m, _ in keys], dtype=float),
        np.array([positions[key][0] for key in keys], dtype=int),
        np.array([positions[key][1] for key in keys], dtype=int),
    )


def reflection_asymmetry(u: Field, angles) -> np.ndarray:
    """||u - u o R||_2 / ||u||_2 for the reflections R across the lines through the centre at ``angles``.

    Computed from the coefficients: the reflection at angle phi maps the pair
    a cos(m theta) + b sin(m theta) to a' = a cos 2m phi + b sin 2m phi,
    b' = a sin 2m phi - b cos 2m phi.
    """
    m, cos, sin = _angular_pairs(_disk_basis(u))
    padded = np.append(u.coefficients, 0.0)
    a, b = padded[cos], padded[sin]
    twice = 2 * m * np.atleast_1d(np.asarray(angles, dtype=float))[:, None]
    defect = 2 * np.sum(a**2 + b**2 - (a**2 - b**2) * np.cos(twice) - 2 * a * b * np.sin(twice), axis=1)
    norm = np.linalg.norm(u.coefficients)
    if norm == 0:
        raise ValueError("The asymmetry of the zero field is undefined")
    return np.sqrt(np.maximum(defect, 0.0)) / norm


def rotate(u: Field, angle: float) -> Field:
    """x -> u(R x) for the rotation R by ``angle``; the direction at ``angle`` moves onto e_1."""
    m, cos, sin = _angular_pairs(_disk_basis(u))
    coefficients = np.append(u.coefficients, 0.0)
    a, b = coefficients[cos], coefficients[sin]
    c, s = np.cos(m * angle), np.sin(m * angle)
    coefficients[cos] = a * c + b * s
    coefficients[sin] = b * c - a * s
    return Field(u.basis, coefficients[:-1])


def even_part(u: Field) -> Field:
    """(u + u o R)/2 for the reflection R across the e_1 axis: the sine modes dropped."""
    _disk_basis(u)
    keep = np.array([mode.trig != "sin" for mode in u.basis.modes])
    return Field(u.basis, np.where(keep, u.coefficients, 0.0))


def _moment(u) -> np.ndarray:
    basis = u.basis
    values = nodal_values(u)
    moment = (basis.weights * values) @ (basis.nodes - basis.domain.center)
    scale = basis.integrate(np.abs(values)) * _outer_radius(basis.domain)
    return np.zeros(2) if np.linalg.norm(moment) <= 1e-12 * scale else moment


def best_axis(u) -> np.ndarray:
    """The axis e about which ``u`` is closest to foliated Schwarz symmetric.

    The first moment int u(x) (x - x0) dx, e_1 when it vanishes, starts the
    search; for a :class:`Field` that is not symmetric about it, the line of
    least reflection asymmetry is found by a scan of ``settings.AXIS_SCAN``
    angles and a bounded refinement, then oriented along the moment.
    """
    _disk_basis(u)
    moment = _moment(u)
    start = moment / np.linalg.norm(moment) if moment.any() else np.array([1.0, 0.0])
    if not isinstance(u, Field):
        return start
    theta = np.arctan2(start[1], start[0])
    if reflection_asymmetry(u, theta)[0] <= settings.TOLERANCES["pointwise"]:
        return start

    step = np.pi / settings.AXIS_SCAN
    angles = theta + step * np.arange(settings.AXIS_SCAN)
    scan = reflection_asymmetry(u, angles)
    best = int(np.argmin(scan))
    result = optimize.minimize_scalar(
        lambda angle: reflection_asymmetry(u, angle)[0],
        bounds=(angles[best] - step, angles[best] + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    angle = result.x if result.fun <= scan[best] else angles[best]
    direction = np.array([np.cos(angle), np.sin(angle)])
    if direction @ moment < 0:
        direction = -direction
    logger.debug("Axis %s, reflection asymmetry %.3e", direction, min(result.fun, scan[best]))
    return direction


def schwarz_polarization_deficit(
    u,
    normals: int = settings.POLARIZATION_NORMALS,
    offsets: int = settings.POLARIZATION_OFFSETS,
) -> float:
    """max over the sampled H containing the centre of ||u_H - u||_2 / ||u||_2.

    Zero characterizes Schwarz symmetric fields at the sampling resolution.
    """
    basis = ball_basis(u)
    return max(polarization_deficit(u, H) for H in polarization_family(basis, None, normals, offsets))


def symmetry_report(u, axis=None, normals: int = settings.POLARIZATION_NORMALS) -> SymmetryReport:
    """Radial and foliated deficits of ``u`` on the disk, about ``axis`` or its best axis."""
    basis = _disk_basis(u)
    direction = best_axis(u) if axis is None else axis_vector(axis)
    field = u if isinstance(u, Field) else u.to_field()
    deficits = [polarization_deficit(u, H) for H in polarization_family(basis, direction, normals)]
    violations = sum(deficit > settings.FOLIATED_DEFICIT_TOLERANCE for deficit in deficits)
    report = SymmetryReport(
        radial_deficit=radial_deficit(u),
        foliated_deficit=max(deficits),
        axis=tuple(float(x) for x in direction),
        violations=int(violations),
        samples=len(deficits),
        axis_asymmetry=float(reflection_asymmetry(field, np.arctan2(direction[1], direction[0]))[0]),
    )
    logger.debug("Symmetry report: %s", report)
    return report


def polarization_comparison(f, H: HalfSpace, phi=None) -> PolarizationComparison:
    """Compare -Delta u = f and -Delta v = f_H under the polarization by H.

    With f >= 0 and the boundary of H through the centre, v = v_H, u_H <= v and
    int u^s phi <= int v^s phi_H for every density phi >= 0 and s >= 1; the
    report carries the margins for s = 1, 2. ``phi`` defaults to the first
    eigenfunction.

    Raises:
        ValueError: If f or phi is negative, or H does not pass through the centre.
        DomainError: Off the interval and the disk.
    """
    basis = ball_basis(f)
    if H.offset != 0:
        raise ValueError(f"The comparison needs a half-space bounded through the centre, got offset {H.offset}")
    phi = Field.mode(basis, 1) if phi is None else phi
    basis.check_same(phi.basis)
    nonnegative_values(f)
    nonnegative_values(phi)

    u = solve_poisson(nodal_values(f), basis)
    v = solve_poisson(polarize(f, H).values, basis)
    u_plus = np.maximum(u.nodal, 0.0)
    v_plus = np.maximum(v.nodal, 0.0)
    u_H = polarize(u, H)
    phi_H = polarize(phi, H).values
    phi_values = nodal_values(phi)

    margins = {}
    for s in (1, 2):
        right = basis.integrate(v_plus**s * phi_H)
        left = basis.integrate(u_plus**s * phi_values)
        margins[s] = float((right - left) / abs(right)) if right else 0.0
    report = PolarizationComparison(
        v_deficit=polarization_deficit(v, H),
        pointwise_gap=float((u_H.values - v.nodal).max() / v.nodal.max()),
        margins=margins,
    )
    if not report.holds:
        logger.warning("Polarization comparison failed for %s: %s", H, report.to_dict())
    return report
