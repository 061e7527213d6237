"""Tests for the energy functionals."""
import numpy as np
import pytest

from hamsys.functionals.energies import (
    energy_direct,
    energy_dual,
    energy_dual_gradient,
    energy_fourth_order,
    energy_fourth_order_gradient,
    energy_fractional,
    solution_pair,
    system_residual,
)
from hamsys.functionals.models import DualPair, Framework, FrameworkConfig
from hamsys.problem import ExponentPair
from hamsys.spectral import Domain, Field, GridFunction, build_basis
from hamsys.spectral.utils import e_norm, lp_norm


@pytest.fixture
def field_factory():
    def create_field(domain=None, modes=16, seed=0, amplitude=1.0, decay=2.0):
        basis = build_basis(domain or Domain.interval(np.pi), modes)
        rng = np.random.default_rng(seed)
        coefficients = amplitude * rng.standard_normal(modes) / np.arange(1, modes + 1) ** decay
        return Field(basis, coefficients)

    return create_field


@pytest.fixture
def interval_basis():
    return build_basis(Domain.interval(np.pi), 16)


@pytest.fixture
def phi_1(interval_basis):
    return Field.mode(interval_basis, 1)


def test_energy_direct_of_zero_pair(interval_basis):
    zero = Field.zeros(interval_basis)
    assert energy_direct(zero, zero, ExponentPair(3, 3)) == 0.0


def test_energy_direct_of_first_eigenfunction(phi_1):
    # int |phi_1|^4 = (2/pi)^2 3 pi / 8 = 3 / (2 pi)
    assert energy_direct(phi_1, phi_1, ExponentPair(3, 3)) == pytest.approx(1 - 3 / (4 * np.pi), rel=1e-12)


@pytest.mark.parametrize("seed", range(3))
def test_energy_direct_is_below_minus_dirichlet_on_the_anti_diagonal(field_factory, seed):
    u = field_factory(seed=seed)
    assert energy_direct(u, -u, ExponentPair(2, 3)) <= -e_norm(u, 1) ** 2


def test_energy_direct_rejects_mismatched_bases(field_factory):
    with pytest.raises(ValueError):
        energy_direct(field_factory(modes=8), field_factory(modes=16), ExponentPair(3, 3))


def test_potential_shifts_the_quadratic_part(phi_1):
    shifted = ExponentPair(3, 3, potential=2.0)
    plain = ExponentPair(3, 3)
    assert energy_direct(phi_1, phi_1, shifted) - energy_direct(phi_1, phi_1, plain) == pytest.approx(2.0)


def test_energy_fractional_at_half_split_is_direct(field_factory):
    u, v = field_factory(seed=1), field_factory(seed=2)
    e = ExponentPair(2, 3)
    assert energy_fractional(u, v, e, 1.0) == pytest.approx(energy_direct(u, v, e), rel=1e-12)


@pytest.mark.parametrize(
    "domain",
    [
        Domain.interval(np.pi),
        Domain.rectangle(np.pi, 2.0),
        Domain.disk(1.0),
    ],
)
def test_energy_fractional_does_not_depend_on_the_split(field_factory, domain):
    u, v = field_factory(domain=domain, seed=3), field_factory(domain=domain, seed=4)
    e = ExponentPair(2, 3, potential=0.5)
    values = [energy_fractional(u, v, e, s) for s in (0.25, 0.5, 1.5, 1.75)]
    assert np.ptp(values) <= 1e-10 * max(1.0, abs(values[0]))


def test_energy_fractional_quadratic_part_vanishes_on_orthogonal_modes(interval_basis):
    e = ExponentPair(3, 3)
    phi_1, phi_2 = Field.mode(interval_basis, 1), Field.mode(interval_basis, 2)
    hamiltonian_only = -energy_direct(phi_1, phi_2, e)
    assert energy_fractional(phi_1, phi_2, e, 0.5) == pytest.approx(-hamiltonian_only)


@pytest.mark.parametrize("s", [0.0, 2.0, -1.0, 2.5])
def test_energy_fractional_rejects_split_out_of_range(phi_1, s):
    with pytest.raises(ValueError):
        energy_fractional(phi_1, phi_1, ExponentPair(3, 3), s)


def test_energy_dual_of_zero_pair(interval_basis):
    zero = np.zeros(interval_basis.node_count)
    assert energy_dual(DualPair.from_nodal(interval_basis, zero, zero), ExponentPair(3, 3)) == 0.0


def test_energy_dual_of_first_eigenfunction(phi_1):
    d = DualPair(phi_1.grid(), phi_1.grid())
    expected = 1.5 * lp_norm(phi_1, 4 / 3) ** (4 / 3) - 1
    assert energy_dual(d, ExponentPair(3, 3)) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_energy_dual_is_positive_near_the_origin(field_factory, seed):
    u, v = field_factory(seed=seed), field_factory(seed=seed + 10)
    d = DualPair((1e-3 * u).grid(), (1e-3 * v).grid())
    assert energy_dual(d, ExponentPair(3, 3)) > 0


@pytest.mark.parametrize("seed", range(10))
def test_energy_dual_gradient_matches_finite_differences(interval_basis, seed):
    rng = np.random.default_rng(seed)
    count = interval_basis.node_count
    e = ExponentPair(2.2, 4, alpha=1.0, beta=0.5)
    f, g = rng.uniform(0.5, 1.5, count), rng.uniform(0.5, 1.5, count)
    df, dg = rng.standard_normal(count), rng.standard_normal(count)
    h = 1e-6

    def phi(t):
        return energy_dual(DualPair.from_nodal(interval_basis, f + t * df, g + t * dg), e)

    gradient = energy_dual_gradient(DualPair.from_nodal(interval_basis, f, g), e)
    analytic = interval_basis.integrate(gradient.f.values * df + gradient.g.values * dg)
    numeric = (phi(h) - phi(-h)) / (2 * h)
    assert abs(numeric - analytic) <= 1e-5 * abs(analytic)


def test_energy_fourth_order_of_zero(interval_basis):
    assert energy_fourth_order(Field.zeros(interval_basis), ExponentPair(3, 3)) == 0.0


def test_energy_fourth_order_of_first_eigenfunction(phi_1):
    expected = 0.75 * lp_norm(phi_1, 4 / 3) ** (4 / 3) - 0.25 * 3 / (2 * np.pi)
    assert energy_fourth_order(phi_1, ExponentPair(3, 3)) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_energy_fourth_order_gradient_matches_finite_differences(field_factory, seed):
    u, direction = field_factory(seed=seed, amplitude=2.0), field_factory(seed=seed + 100)
    e = ExponentPair(2.2, 4)
    h = 1e-6
    numeric = (energy_fourth_order(u + h * direction, e) - energy_fourth_order(u - h * direction, e)) / (2 * h)
    analytic = energy_fourth_order_gradient(u, e).coefficients @ direction.coefficients
    assert abs(numeric - analytic) <= 1e-5 * abs(analytic)


def test_system_residual_of_zero_pair(interval_basis):
    zero = Field.zeros(interval_basis)
    assert system_residual(zero, zero, ExponentPair(3, 3)) == 0.0


def test_system_residual_vanishes_on_a_linear_solution(phi_1):
    # u = v = phi_1 solves -u'' = v, -v'' = u
    assert system_residual(phi_1, phi_1, ExponentPair(1, 1)) < 1e-14


@pytest.mark.parametrize("seed", range(3))
def test_system_residual_is_nonnegative(field_factory, seed):
    assert system_residual(field_factory(seed=seed), field_factory(seed=seed + 1), ExponentPair(2, 3)) > 0


def test_solution_pair_records_energy_and_residual(phi_1):
    e = ExponentPair(3, 3)
    pair = solution_pair(phi_1, phi_1, e, Framework.INVERSION)
    assert pair.energy == pytest.approx(1 - 3 / (4 * np.pi))
    assert pair.residual > 0
    assert pair.to_dict()["provenance"] == "inversion"


@pytest.mark.parametrize(
    "kwargs",
    [
        # the split must lie in (0, 2)
        {"split": 2.0},
        {"lam": 0.0},
        {"tolerance": -1.0},
        {"ray_window": (1.0, 0.5)},
    ],
)
def test_framework_config_validation(kwargs):
    with pytest.raises(ValueError):
        FrameworkConfig(**kwargs)


def test_framework_config_iteration_caps():
    assert FrameworkConfig(framework="inversion").iteration_cap == 10000
    assert FrameworkConfig(framework="dual").iteration_cap == 500
    assert FrameworkConfig(framework="dual", max_iter=3).iteration_cap == 3


def test_grid_function_pair_rejects_mismatched_bases(interval_basis):
    other = build_basis(Domain.interval(np.pi), 8)
    with pytest.raises(ValueError):
        DualPair(
            GridFunction(interval_basis, np.zeros(interval_basis.node_count)),
            GridFunction(other, np.zeros(other.node_count)),
        )


def test_framework_parse_list():
    assert Framework.parse_list("all") == [Framework.DUAL, Framework.INVERSION, Framework.LS_REDUCTION]
    assert Framework.parse_list("inversion, shooting_oracle") == [Framework.INVERSION, Framework.SHOOTING]
