"""Dirichlet eigenbases and quadrature rules for the model domains."""
import logging
from functools import lru_cache

import numpy as np
from scipy import special

from hamsys import settings
from hamsys.exceptions import CapacityError, DomainError
from hamsys.spectral.models import Domain, DomainKind, Mode, SpectralBasis

logger = logging.getLogger(__name__)

# sin before cos on ties; the m = 0 modes carry no angular factor
_TRIG_ORDER = {"": 0, "sin": 0, "cos": 1}


@lru_cache(maxsize=32)
def build_basis(
    domain: Domain,
    modes: int,
    radial_only: bool = False,
    quadrature_factor: int | None = None,
) -> SpectralBasis:
    """Build the first ``modes`` Dirichlet eigenpairs of ``domain`` with quadrature.

    Modes are sorted by eigenvalue; ties are broken by the angular index m and
    then sin before cos. Quadrature node counts grow with the highest mode
    index so that products of basis functions and the power nonlinearities are
    integrated to near machine accuracy.

    Args:
        domain (Domain): The model domain.
        modes (int): Number of eigenpairs M, 1 <= M <= settings.MAX_MODES.
        radial_only (bool): On the disk, keep only the m = 0 Bessel modes.
        quadrature_factor (int): Nodes per mode index; defaults to settings.QUADRATURE_FACTOR.

    Returns:
        SpectralBasis: The immutable basis.

    Raises:
        CapacityError: If ``modes`` exceeds settings.MAX_MODES.
        DomainError: If ``radial_only`` is requested off the disk.
    """
    if modes < 1:
        raise ValueError(f"A basis needs at least one mode, got {modes}")
    if modes > settings.MAX_MODES:
        raise CapacityError(f"{modes} modes requested, the cap is {settings.MAX_MODES}")
    if radial_only and domain.kind is not DomainKind.DISK:
        raise DomainError(f"A radial sub-basis needs a disk, got {domain}")
    factor = quadrature_factor or settings.QUADRATURE_FACTOR
    if domain.kind is DomainKind.INTERVAL:
        parts = _interval(domain, modes, factor)
    elif domain.kind is DomainKind.RECTANGLE:
        parts = _rectangle(domain, modes, factor)
    else:
        parts = _disk(domain, modes, factor, radial_only)
    basis = SpectralBasis(domain, radial_only=radial_only, quadrature_factor=factor, **parts)
    logger.debug("Built %r", basis)
    return basis


def gauss_legendre(count: int, lower: float, upper: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [lower, upper]."""
    x, w = special.roots_legendre(count)
    half = (upper - lower) / 2
    return lower + half * (x + 1), half * w


def _interval(domain, count, factor):
    (length,) = domain.lengths
    n = np.arange(1, count + 1)
    modes = tuple(Mode((int(k),), float((k * np.pi / length) ** 2)) for k in n)
    x, w = gauss_legendre(factor * count + settings.QUADRATURE_MARGIN, 0.0, length)
    slope = np.sqrt(2 / length) * n * np.pi / length
    return {
        "modes": modes,
        "nodes": x[:, None],
        "weights": w,
        "boundary_nodes": np.array([[0.0], [length]]),
        "boundary_weights": np.ones(2),
        # outward normal derivative: -u'(0) and u'(L)
        "boundary_matrix": np.stack([-slope, slope * np.cos(n * np.pi)], axis=1),
        "boundary_moment": np.full(2, length / 2),
        "grid_shape": (len(w),),
    }


def _rectangle(domain, count, factor):
    width, height = domain.lengths
    side = count
    m, n = np.meshgrid(np.arange(1, side + 1), np.arange(1, side + 1), indexing="ij")
    m, n = m.ravel(), n.ravel()
    eigenvalues = np.pi**2 * (m**2 / width**2 + n**2 / height**2)
    order = np.lexsort((n, m, np.round(eigenvalues, 9)))[:count]
    m, n, eigenvalues = m[order], n[order], eigenvalues[order]
    modes = tuple(Mode((int(a), int(b)), float(lam)) for a, b, lam in zip(m, n, eigenvalues))

    x, wx = gauss_legendre(factor * int(m.max()) + settings.QUADRATURE_MARGIN, 0.0, width)
    y, wy = gauss_legendre(factor * int(n.max()) + settings.QUADRATURE_MARGIN, 0.0, height)
    nodes = np.stack(np.meshgrid(x, y, indexing="ij"), axis=-1).reshape(-1, 2)
    weights = np.outer(wx, wy).ravel()

    scale = 2 / np.sqrt(width * height)
    a = (m * np.pi / width)[:, None]
    b = (n * np.pi / height)[:, None]
    edges = [
        # (nodes, weights, normal derivative of every mode, moment)
        (np.stack([np.zeros_like(y), y], 1), wy, -scale * a * np.sin(b * y), width / 2),
        (np.stack([np.full_like(y, width), y], 1), wy, scale * a * np.cos(a * width) * np.sin(b * y), width / 2),
        (np.stack([x, np.zeros_like(x)], 1), wx, -scale * b * np.sin(a * x), height / 2),
        (np.stack([x, np.full_like(x, height)], 1), wx, scale * b * np.cos(b * height) * np.sin(a * x), height / 2),
    ]
    return {
        "modes": modes,
        "nodes": nodes,
        "weights": weights,
        "boundary_nodes": np.concatenate([edge[0] for edge in edges]),
        "boundary_weights": np.concatenate([edge[1] for edge in edges]),
        "boundary_matrix": np.concatenate([edge[2] for edge in edges], axis=1),
        "boundary_moment": np.concatenate([np.full(len(edge[1]), edge[3]) for edge in edges]),
        "grid_shape": (len(x), len(y)),
    }


def _disk_modes(radius, count, radial_only):
    if radial_only:
        roots = special.jn_zeros(0, count)
        return [_bessel_mode(radius, 0, k + 1, root, "") for k, root in enumerate(roots)]
    m_cap = int(2 * np.sqrt(count)) + 8
    k_cap = int(np.sqrt(count)) + 8
    while True:
        candidates = []
        last_roots = []
        for m in range(m_cap + 1):
            roots = special.jn_zeros(m, k_cap)
            last_roots.append(roots[-1])
            for k, root in enumerate(roots, start=1):
                for trig in ("",) if m == 0 else ("sin", "cos"):
                    candidates.append(_bessel_mode(radius, m, k, root, trig))
        candidates.sort(key=lambda mode: (round(mode.root, 12), mode.indices[0], _TRIG_ORDER[mode.trig]))
        chosen = candidates[:count]
        # every mode outside the candidate box has a larger zero than the last one kept
        if chosen[-1].root < min(min(last_roots), special.jn_zeros(m_cap, 1)[0]):
            return chosen
        m_cap, k_cap = 2 * m_cap, 2 * k_cap


def _bessel_mode(radius, m, k, root, trig):
    if m == 0:
        norm = 1 / (np.sqrt(np.pi) * radius * abs(special.jv(1, root)))
    else:
        norm = 1 / (np.sqrt(np.pi / 2) * radius * abs(special.jv(m + 1, root)))
    return Mode((m, k), float((root / radius) ** 2), trig=trig, root=float(root), norm=float(norm))


def _disk(domain, count, factor, radial_only):
    (radius,) = domain.lengths
    modes = tuple(_disk_modes(radius, count, radial_only))
    m_max = max(mode.indices[0] for mode in modes)
    root_max = max(mode.root for mode in modes)

    n_theta = 2 * factor * m_max + settings.QUADRATURE_MARGIN
    n_theta += -n_theta % 4
    n_r = int(np.ceil(factor * root_max / 2)) + settings.QUADRATURE_MARGIN
    # Gauss-Jacobi for the measure r dr on [0, R]
    x, w = special.roots_jacobi(n_r, 0.0, 1.0)
    r = radius * (x + 1) / 2
    w_r = radius**2 / 4 * w
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    d_theta = 2 * np.pi / n_theta

    nodes = np.stack(
        [np.outer(r, np.cos(theta)).ravel(), np.outer(r, np.sin(theta)).ravel()],
        axis=1,
    )
    weights = np.repeat(w_r * d_theta, n_theta)

    m = np.array([mode.indices[0] for mode in modes])[:, None]
    trig = np.array([mode.trig for mode in modes])[:, None]
    slope = np.array([mode.norm * mode.root / radius * special.jvp(mode.indices[0], mode.root) for mode in modes])
    angular = np.where(trig == "cos", np.cos(m * theta), np.where(trig == "sin", np.sin(m * theta), 1.0))
    return {
        "modes": modes,
        "nodes": nodes,
        "weights": weights,
        "boundary_nodes": radius * np.stack([np.cos(theta), np.sin(theta)], axis=1),
        "boundary_weights": np.full(n_theta, radius * d_theta),
        "boundary_matrix": slope[:, None] * angular,
        "boundary_moment": np.full(n_theta, radius),
        "grid_shape": (n_r, n_theta),
    }
