"""Tests for the bases module in the spectral app."""
import numpy as np
import pytest
from scipy import optimize, special

from hamsys.exceptions import CapacityError, DomainError
from hamsys.spectral import Domain, build_basis


@pytest.mark.parametrize(
    "domain, modes, expected",
    [
        # classical Dirichlet spectrum n^2
        (Domain.interval(np.pi), 3, [1.0, 4.0, 9.0]),
        # m^2 + n^2 with (1,1), (1,2), (2,1)
        (Domain.rectangle(np.pi, np.pi), 3, [2.0, 5.0, 5.0]),
        # interval of length 2: (n pi / 2)^2
        (Domain.interval(2.0), 2, [np.pi**2 / 4, np.pi**2]),
    ],
)
def test_build_basis_eigenvalues(domain, modes, expected):
    """Test the eigenvalues of the interval and rectangle bases."""
    basis = build_basis(domain, modes)
    assert np.allclose(basis.eigenvalues, expected, rtol=1e-14)


def test_disk_first_eigenvalue_is_first_bessel_zero_squared():
    """Test lambda_1 of the unit disk against a root of J_0 found independently."""
    j01 = optimize.brentq(special.j0, 2.0, 3.0, xtol=1e-15)
    basis = build_basis(Domain.disk(1.0), 6)
    assert basis.eigenvalues[0] == pytest.approx(j01**2, rel=1e-12)
    assert basis.eigenvalues[0] == pytest.approx(5.7832, abs=1e-4)


def test_disk_modes_are_sorted_with_sin_before_cos():
    """Test the deterministic layout of the disk modes."""
    basis = build_basis(Domain.disk(1.0), 10)
    assert np.all(np.diff(basis.eigenvalues) >= 0)
    # the second eigenvalue is double: J_1 with sin then cos
    second, third = basis.modes[1], basis.modes[2]
    assert (second.indices, second.trig) == ((1, 1), "sin")
    assert (third.indices, third.trig) == ((1, 1), "cos")
    assert basis.eigenvalues[1] == pytest.approx(basis.eigenvalues[2], rel=1e-14)


def test_radial_sub_basis_keeps_only_axisymmetric_modes():
    basis = build_basis(Domain.disk(1.0), 8, radial_only=True)
    assert all(mode.is_radial for mode in basis.modes)
    assert basis.eigenvalues[1] == pytest.approx(special.jn_zeros(0, 2)[1] ** 2, rel=1e-12)


def test_radial_sub_basis_needs_a_disk():
    with pytest.raises(DomainError):
        build_basis(Domain.interval(np.pi), 4, radial_only=True)


@pytest.mark.parametrize(
    "domain, modes",
    [
        (Domain.interval(np.pi), 32),
        (Domain.interval(1.5), 17),
        (Domain.rectangle(np.pi, 2.0), 24),
        (Domain.disk(1.0), 24),
        (Domain.disk(2.5), 12),
    ],
)
def test_orthonormality(domain, modes):
    """Test |<phi_i, phi_j> - delta_ij| < 1e-10 under the quadrature."""
    basis = build_basis(domain, modes)
    gram = basis.matrix @ (basis.weights[:, None] * basis.matrix.T)
    assert np.max(np.abs(gram - np.eye(modes))) < 1e-10


@pytest.mark.parametrize(
    "domain",
    [Domain.interval(np.pi), Domain.rectangle(2.0, 1.0), Domain.disk(1.0)],
)
def test_eigenfunctions_vanish_on_the_boundary(domain):
    basis = build_basis(domain, 12)
    values = basis.evaluate_modes(basis.boundary_nodes)
    assert np.max(np.abs(values)) < 1e-12


def test_quadrature_exactness_against_closed_forms():
    """Test smooth integrands against their exact integrals on each domain."""
    interval = build_basis(Domain.interval(np.pi), 8)
    x = interval.nodes[:, 0]
    assert interval.integrate(x**5) == pytest.approx(np.pi**6 / 6, rel=1e-13)
    assert interval.integrate(np.sin(x) ** 4) == pytest.approx(3 * np.pi / 8, rel=1e-13)

    rectangle = build_basis(Domain.rectangle(2.0, 3.0), 8)
    x, y = rectangle.nodes.T
    assert rectangle.integrate(x**3 * y**2) == pytest.approx((2.0**4 / 4) * (3.0**3 / 3), rel=1e-13)

    disk = build_basis(Domain.disk(1.0), 8)
    x, y = disk.nodes.T
    assert disk.integrate(x**2 + y**2) == pytest.approx(np.pi / 2, rel=1e-13)
    assert disk.integrate(x**4) == pytest.approx(np.pi / 8, rel=1e-13)
    assert disk.integrate(np.ones(disk.node_count)) == pytest.approx(np.pi, rel=1e-13)


def test_disk_normal_derivative_matches_finite_difference():
    basis = build_basis(Domain.disk(1.0), 6)
    theta = np.arctan2(basis.boundary_nodes[:, 1], basis.boundary_nodes[:, 0])
    h = 1e-6
    inner = (1 - h) * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    outer_values = basis.evaluate_modes(basis.boundary_nodes * (1 - 1e-15))
    inner_values = basis.evaluate_modes(inner)
    estimate = (outer_values - inner_values) / h
    assert np.allclose(basis.boundary_matrix, estimate, atol=1e-4 * np.max(np.abs(basis.boundary_matrix)))


def test_capacity_error():
    with pytest.raises(CapacityError):
        build_basis(Domain.interval(np.pi), 10**6)


def test_at_least_one_mode():
    with pytest.raises(ValueError):
        build_basis(Domain.interval(np.pi), 0)


def test_build_basis_is_cached():
    assert build_basis(Domain.interval(np.pi), 5) is build_basis(Domain.interval(np.pi), 5)
