"""Schwarz rearrangement on the model balls and the Talenti comparison.

The nodal data on a quadrature grid is read as a simple function: node k
carries the value w_k on a set of mass omega_k. Its Schwarz rearrangement is
the radial step function of :class:`SchwarzProfile`, which preserves every
L^r norm exactly. On the grid, the nodes at one distance from the centre form
a shell whose quadrature mass interval follows the shells inside it, and w*
takes the mean of the step function over that interval. Radial nonincreasing
data is then a fixed point and the integral of w is kept; powers are
integrated through the profile.
"""
import logging
from functools import lru_cache

import numpy as np

from hamsys import settings
from hamsys.exceptions import DomainError
from hamsys.spectral.models import DomainKind, GridFunction
from hamsys.spectral.utils import nodal_values, solve_poisson
from hamsys.symmetry.models import Rearrangement, SchwarzProfile, TalentiReport

logger = logging.getLogger(__name__)

# nodes closer than this fraction of the outer radius share a shell
_SHELL_TOLERANCE = 1e-12


def check_ball(domain):
    if domain.kind is DomainKind.RECTANGLE:
        raise DomainError(f"Schwarz symmetry needs an interval or a disk, got {domain}")
    return domain


def ball_basis(w):
    """The basis of ``w`` if its domain is a ball (an interval or a disk)."""
    check_ball(w.basis.domain)
    return w.basis


def nonnegative_values(w, tol: float = 1e-12) -> np.ndarray:
    """Nodal values of ``w`` with round-off negatives cut to zero.

    Raises:
        ValueError: If some value is below -tol * max |w|.
    """
    values = nodal_values(w)
    scale = np.abs(values).max(initial=0.0)
    if values.min(initial=0.0) < -tol * scale:
        raise ValueError(f"Rearrangement needs nonnegative data, got min {values.min():.3e}")
    return np.maximum(values, 0.0)


def schwarz_profile(w) -> SchwarzProfile:
    """The exact radial step function w* of the nodal data of ``w >= 0``."""
    basis = ball_basis(w)
    values = nonnegative_values(w)
    order = np.argsort(-values, kind="stable")
    return SchwarzProfile(basis.domain.dimension, np.cumsum(basis.weights[order]), values[order])


@lru_cache(maxsize=8)
def shells(basis) -> tuple[np.ndarray, np.ndarray]:
    """Shell index of every node, counted outwards, and the quadrature mass bounds of the shells."""
    order = np.argsort(basis.radius, kind="stable")
    radius = basis.radius[order]
    fresh = np.diff(radius, prepend=-np.inf) > _SHELL_TOLERANCE * max(radius[-1], 1.0)
    labels = np.cumsum(fresh) - 1
    index = np.empty(basis.node_count, dtype=int)
    index[order] = labels
    bounds = np.concatenate([[0.0], np.cumsum(np.bincount(labels, weights=basis.weights[order]))])
    return index, bounds


def schwarz_rearrange(w) -> Rearrangement:
    """The Schwarz rearrangement of ``w >= 0`` on the basis grid, with its exact profile.

    Raises:
        DomainError: Off the interval and the disk.
        ValueError: If ``w`` has negative values beyond round-off.
    """
    profile = schwarz_profile(w)
    index, bounds = shells(w.basis)
    return Rearrangement(w.basis, profile.cell_means(bounds)[index], profile=profile)


def relative_l2(basis, values, reference) -> float:
    norm = np.sqrt(basis.integrate(reference**2))
    if norm == 0:
        raise ValueError("Deficits are undefined for the zero field")
    return float(np.sqrt(basis.integrate((values - reference) ** 2)) / norm)


def radial_deficit(u) -> float:
    """||u* - |u| ||_2 / ||u||_2 with u* the rearrangement of |u|."""
    basis = ball_basis(u)
    values = np.abs(nodal_values(u))
    star = schwarz_rearrange(GridFunction(basis, values))
    return relative_l2(basis, star.values, values)


def distribution_gap(w, other, slices: int = settings.LEVEL_SLICES) -> float:
    """Largest difference of the distribution functions of two grid data, relative to |Omega|.

    mu(s) = |{w > s}| is compared at ``slices`` levels spanning both ranges.
    """
    basis = w.basis
    basis.check_same(other.basis)
    a, b = nodal_values(w), nodal_values(other)
    levels = np.linspace(min(a.min(), b.min()), max(a.max(), b.max()), slices)

    def measure(values):
        order = np.argsort(values)
        tail = np.cumsum(basis.weights[order][::-1])[::-1]
        index = np.searchsorted(values[order], levels, side="right")
        return np.append(tail, 0.0)[index]

    return float(np.abs(measure(a) - measure(b)).max() / basis.integrate(np.ones(basis.node_count)))


def layer_excess(w, other) -> float:
    """max over masses m of (int_0^m w* - int_0^m other*) / int_0^m other*, at least zero.

    Both sides are piecewise linear in m with breakpoints at the quadrature
    masses, so comparing at every breakpoint is exact.
    """
    profile, reference = schwarz_profile(w), schwarz_profile(other)
    masses = np.union1d(profile.masses, reference.masses)
    upper, lower = profile.cumulative(masses), reference.cumulative(masses)
    inside = lower > 0
    return float(max(((upper - lower)[inside] / lower[inside]).max(initial=0.0), 0.0))


def talenti_check(f) -> TalentiReport:
    """Compare u*, where -Delta u = f, with w, where -Delta w = f*, on a ball.

    Both Poisson problems are solved on the basis of ``f``; u* rearranges the
    positive part of the Galerkin solution u. The ordering is certified on the
    mass integrals int_0^m u* <= int_0^m w, the nodes report the pointwise one.

    Raises:
        DomainError: Off the interval and the disk.
        ValueError: If f has negative values or vanishes.
    """
    basis = ball_basis(f)
    values = nonnegative_values(f)
    f_star = schwarz_rearrange(GridFunction(basis, values))
    u = solve_poisson(values, basis)
    w = solve_poisson(f_star.values, basis)
    u_plus = GridFunction(basis, np.maximum(u.nodal, 0.0))
    w_plus = GridFunction(basis, np.maximum(w.nodal, 0.0))
    scale = w.nodal.max()
    if scale <= 0:
        raise ValueError("talenti_check needs f > 0 somewhere")
    difference = (schwarz_rearrange(u_plus).values - w.nodal) / scale
    report = TalentiReport(
        violation=layer_excess(u_plus, w_plus),
        pointwise_violation=float(max(difference.max(), 0.0)),
        gap=float(max(-difference.min(), 0.0)),
        rearrangement_gap=relative_l2(basis, f_star.values, values),
    )
    if not report.holds:
        logger.warning("Talenti ordering violated by %.3e in the mass integrals", report.violation)
    return report
