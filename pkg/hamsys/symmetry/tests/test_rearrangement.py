"""Tests for the Schwarz rearrangement and the Talenti comparison."""
import numpy as np
import pytest

from hamsys.exceptions import DomainError
from hamsys.spectral import Domain, Field, build_basis
from hamsys.spectral.models import GridFunction
from hamsys.spectral.utils import lp_norm
from hamsys.symmetry import Rearrangement, radial_deficit, schwarz_profile, schwarz_rearrange, talenti_check
from hamsys.symmetry.rearrangement import layer_excess, shells


@pytest.fixture
def disk_basis():
    return build_basis(Domain.disk(1.0), 32)


@pytest.fixture
def bump_factory(disk_basis):
    def create_bump(center=(0.3, 0.2), width=0.25):
        offset = disk_basis.nodes - np.array(center)
        return GridFunction(disk_basis, np.exp(-np.sum(offset**2, axis=1) / width**2))

    return create_bump


@pytest.mark.parametrize(
    "domain",
    [
        Domain.disk(1.0),
        # sin on (0, pi), symmetric decreasing about pi / 2
        Domain.interval(np.pi),
    ],
)
def test_radial_decreasing_data_is_a_fixed_point(domain):
    phi = Field.mode(build_basis(domain, 32), 1)
    star = schwarz_rearrange(phi.grid())
    assert np.abs(star.values - phi.nodal).max() <= 1e-10 * phi.nodal.max()


@pytest.mark.parametrize("r", [1, 2, 4])
def test_profile_preserves_power_integrals(disk_basis, bump_factory, r):
    bump = bump_factory()
    profile = schwarz_profile(bump)
    assert profile.power_integral(r) == pytest.approx(disk_basis.integrate(bump.values**r), rel=1e-12)


@pytest.mark.parametrize("r", [2, 4])
def test_rearrangement_keeps_every_norm(disk_basis, bump_factory, r):
    """
    GIVEN a bump centred away from the origin on a 32 mode disk grid
    WHEN it is rearranged
    THEN its L^r norm is unchanged to 1e-8
    """
    bump = bump_factory()
    star = schwarz_rearrange(bump)
    assert isinstance(star, Rearrangement)
    assert lp_norm(star, r) == pytest.approx(lp_norm(bump, r), rel=1e-8)


def test_rearrangement_keeps_the_integral_on_the_grid(disk_basis, bump_factory):
    bump = bump_factory()
    star = schwarz_rearrange(bump)
    assert disk_basis.integrate(star.values) == pytest.approx(disk_basis.integrate(bump.values), rel=1e-12)


@pytest.mark.parametrize(
    "domain, gamma, expected",
    [
        (Domain.disk(1.0), 2.0, np.pi / 2),
        # int_{-1}^{1} |x| dx
        (Domain.interval(2.0), 1.0, 1.0),
    ],
)
def test_weighted_profile_integrals_are_exact_on_shells(domain, gamma, expected):
    basis = build_basis(domain, 16)
    profile = schwarz_profile(GridFunction(basis, np.ones(basis.node_count)))
    assert profile.power_integral(1, gamma) == pytest.approx(expected, rel=1e-12)


def test_rearrangement_is_radial_and_nonincreasing(disk_basis, bump_factory):
    """
    GIVEN a bump centred away from the origin
    WHEN it is rearranged
    THEN the result is constant on every ring of the grid and does not grow outwards
    """
    star = schwarz_rearrange(bump_factory())
    rings = star.values.reshape(disk_basis.grid_shape)
    scale = star.values.max()

    assert np.ptp(rings, axis=1).max() <= 1e-12 * scale
    assert np.all(np.diff(rings.mean(axis=1)) <= 1e-14 * scale)


def test_profile_superlevel_sets_are_centred_balls(disk_basis, bump_factory):
    bump = bump_factory()
    profile = schwarz_profile(bump)
    area = profile.superlevel_measure(0.5)

    assert area == pytest.approx(disk_basis.weights[bump.values > 0.5].sum(), rel=1e-12)
    assert profile(np.sqrt(0.99 * area / np.pi)) > 0.5
    assert profile(np.sqrt(1.01 * area / np.pi)) <= 0.5


def test_profile_vanishes_outside_the_support_mass():
    basis = build_basis(Domain.interval(2.0), 8)
    profile = schwarz_profile(Field.mode(basis, 1))
    assert profile(1.0 + 1e-9) == 0.0
    assert profile(0.0) == pytest.approx(Field.mode(basis, 1).nodal.max())


def test_rearrangement_rejects_negative_data(disk_basis):
    with pytest.raises(ValueError):
        schwarz_rearrange(Field.mode(disk_basis, 3))


def test_rearrangement_rejects_the_rectangle():
    basis = build_basis(Domain.rectangle(), 8)
    with pytest.raises(DomainError):
        schwarz_rearrange(Field.mode(basis, 1))


@pytest.mark.parametrize(
    "amplitude, is_radial",
    [
        (0.0, True),
        # the m = 1 cosine mode moves mass off centre
        (0.3, False),
    ],
)
def test_radial_deficit(disk_basis, amplitude, is_radial):
    u = Field.mode(disk_basis, 1) + Field.mode(disk_basis, 3, amplitude)
    deficit = radial_deficit(u)
    assert (deficit < 1e-10) is is_radial
    if not is_radial:
        assert deficit > 1e-3


@pytest.mark.parametrize(
    "domain",
    [
        Domain.disk(1.0),
        Domain.interval(np.pi),
    ],
)
def test_talenti_equality_for_symmetric_data(domain):
    report = talenti_check(Field.mode(build_basis(domain, 32), 1))
    assert report.holds
    assert report.equality
    assert report.rearrangement_gap < 1e-10


@pytest.mark.parametrize("seed", range(100))
def test_talenti_ordering_on_the_interval(seed):
    """
    GIVEN f = phi_1 (1 + h / 2) with h a random smooth perturbation, |h| <= 1
    WHEN -Delta u = f and -Delta w = f* are solved on the interval
    THEN u* <= w up to the slack, and the ordering is strict for nonsymmetric f
    """
    basis = build_basis(Domain.interval(np.pi), 32)
    rng = np.random.default_rng(seed)
    coefficients = rng.uniform(-1, 1, 4)
    x = basis.nodes[:, 0]
    h = np.cos(np.outer(x, np.arange(1, 5))) @ coefficients / np.abs(coefficients).sum()
    f = GridFunction(basis, Field.mode(basis, 1).nodal * (1 + 0.5 * h))

    report = talenti_check(f)

    assert report.holds
    assert report.gap > 1e-6
    assert not report.equality


@pytest.mark.parametrize("angle", [0.0, 1.0, 2.5])
def test_talenti_ordering_on_the_disk(disk_basis, angle):
    x = disk_basis.nodes - disk_basis.domain.center
    h = x @ np.array([np.cos(angle), np.sin(angle)])
    f = GridFunction(disk_basis, Field.mode(disk_basis, 1).nodal * (1 + 0.5 * h))

    report = talenti_check(f)

    assert report.holds
    assert not report.equality


def test_talenti_check_rejects_negative_data():
    basis = build_basis(Domain.interval(np.pi), 16)
    with pytest.raises(ValueError):
        talenti_check(Field.mode(basis, 2))


def test_shells_partition_the_disk_grid(disk_basis):
    index, bounds = shells(disk_basis)
    n_r, n_theta = disk_basis.grid_shape

    assert index.max() == n_r - 1
    assert np.all(np.bincount(index) == n_theta)
    assert bounds[-1] == pytest.approx(np.pi, rel=1e-12)


def test_layer_excess_of_a_field_with_itself_is_zero(bump_factory):
    bump = bump_factory()
    assert layer_excess(bump, bump) == 0.0
    assert layer_excess(bump, GridFunction(bump.basis, 2 * bump.values)) == 0.0
    assert layer_excess(GridFunction(bump.basis, 2 * bump.values), bump) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_talenti_ordering_on_random_disk_data(disk_basis, seed):
    """
    GIVEN f = phi_1 (1 + h / 2) with h a random quadratic in x, |h| <= 1
    WHEN -Delta u = f and -Delta w = f* are solved on the unit disk
    THEN the mass integrals of u* stay below those of w to 1e-8 and f is not its own rearrangement
    """
    rng = np.random.default_rng(seed)
    a, b, c, d = rng.uniform(-1, 1, 4)
    x, y = disk_basis.nodes.T
    h = (a * x + b * y + c * (x**2 - y**2) + 2 * d * x * y) / (abs(a) + abs(b) + abs(c) + abs(d))
    f = GridFunction(disk_basis, Field.mode(disk_basis, 1).nodal * (1 + 0.5 * h))

    report = talenti_check(f)

    assert report.violation <= 1e-8
    assert report.holds
    assert not report.equality
