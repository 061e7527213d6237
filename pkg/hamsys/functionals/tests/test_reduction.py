"""Tests for the reduced functional and its anti-diagonal maximization."""
import numpy as np
import pytest

from hamsys.exceptions import UnsupportedRegimeError, WindowError
from hamsys.functionals.energies import energy_direct
from hamsys.functionals.reduction import (
    energy_reduced,
    gradient_reduced,
    ls_saddle_level,
    ray_maximum,
    solve_inner_max,
)
from hamsys.problem import ExponentPair
from hamsys.problem.utils import power, power_primitive
from hamsys.spectral import Domain, Field, build_basis
from hamsys.spectral.utils import e_norm, spectrum


@pytest.fixture
def field_factory():
    def create_field(domain=None, modes=16, seed=0, amplitude=1.0, decay=2.0):
        basis = build_basis(domain or Domain.interval(np.pi), modes)
        rng = np.random.default_rng(seed)
        coefficients = amplitude * rng.standard_normal(modes) / np.arange(1, modes + 1) ** decay
        return Field(basis, coefficients)

    return create_field


@pytest.fixture
def bump():
    basis = build_basis(Domain.interval(np.pi), 16)
    return Field.from_function(basis, lambda x: 2 * np.exp(-8 * (x[:, 0] - 1.2) ** 2) * np.sin(x[:, 0]))


def anti_diagonal_gradient(w, psi, e, lam):
    basis = w.basis
    eigenvalues = spectrum(basis, e.potential)
    u, v = lam * w + psi, w - psi / lam
    gradient = (eigenvalues * v.coefficients - basis.project(power(u.nodal, e.p))) - (
        eigenvalues * u.coefficients - basis.project(power(v.nodal, e.q))
    ) / lam
    return np.sqrt(np.sum(gradient**2 / eigenvalues)) / np.hypot(e_norm(u, 1), e_norm(v, 1))


def test_inner_maximizer_is_zero_for_equal_exponents_at_unit_lambda(field_factory):
    w = field_factory(seed=1, amplitude=2.0)
    psi, _ = solve_inner_max(w, ExponentPair(3, 3), 1.0)
    assert np.allclose(psi.coefficients, 0.0, atol=1e-14)


def test_inner_maximizer_of_zero_is_zero(field_factory):
    zero = Field.zeros(field_factory().basis)
    psi, _ = solve_inner_max(zero, ExponentPair(2.5, 3.5))
    assert psi.is_zero()


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_inner_maximizer_is_stationary(bump, lam):
    """
    GIVEN a bump and unequal exponents
    WHEN the anti-diagonal maximization is solved
    THEN the anti-diagonal component of I' vanishes in the Galerkin norm
    """
    e = ExponentPair(2.5, 3.5)
    psi, iterations = solve_inner_max(bump, e, lam)
    assert iterations > 0
    assert anti_diagonal_gradient(bump, psi, e, lam) < 1e-8


@pytest.mark.parametrize(
    "p, q",
    [
        (1.0, 3.0),
        (3.0, 0.5),
        (0.5, 1.5),
    ],
)
def test_inner_maximizer_refuses_p_or_q_at_most_one(bump, p, q):
    with pytest.raises(UnsupportedRegimeError) as info:
        solve_inner_max(bump, ExponentPair(p, q))
    assert info.value.hypothesis == "H4"


@pytest.mark.parametrize("seed", range(5))
def test_reduced_energy_dominates_the_diagonal(field_factory, seed):
    w = field_factory(seed=seed, amplitude=2.0)
    e = ExponentPair(2.2, 4)
    assert energy_reduced(w, e) >= energy_direct(w, w, e)


def test_reduced_energy_for_equal_exponents(field_factory):
    w = field_factory(seed=3, amplitude=2.0)
    e = ExponentPair(3, 3)
    expected = e_norm(w, 1) ** 2 - 2 * w.basis.integrate(power_primitive(w.nodal, 3))
    assert energy_reduced(w, e) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_reduced_energy_is_an_envelope(field_factory, lam):
    w = field_factory(seed=5, amplitude=2.0)
    e = ExponentPair(2.2, 4)
    top = energy_reduced(w, e, lam)
    for seed in range(20):
        psi = field_factory(seed=100 + seed, amplitude=0.5)
        assert top >= energy_direct(lam * w + psi, w - psi / lam, e)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("seed", range(4))
def test_reduced_gradient_matches_finite_differences(field_factory, lam, seed):
    w, direction = field_factory(seed=seed, amplitude=2.0), field_factory(seed=seed + 50)
    e = ExponentPair(2.2, 4)
    h = 1e-5
    numeric = (energy_reduced(w + h * direction, e, lam) - energy_reduced(w - h * direction, e, lam)) / (2 * h)
    analytic = gradient_reduced(w, e, lam).coefficients @ direction.coefficients
    assert abs(numeric - analytic) <= 1e-5 * abs(analytic)


def test_ray_maximum_is_stationary_along_the_ray(bump):
    e = ExponentPair(2.5, 3.5)
    t, top = ray_maximum(bump, e)
    assert top.gradient.coefficients @ bump.coefficients == pytest.approx(0.0, abs=1e-9 * e_norm(bump, 1) ** 2)
    for factor in (0.9, 1.1):
        assert energy_reduced(factor * t * bump, e) < top.value


def test_ray_maximum_with_a_guess_agrees(bump):
    e = ExponentPair(2.5, 3.5)
    t, _ = ray_maximum(bump, e)
    assert ray_maximum(bump, e, guess=1.3 * t)[0] == pytest.approx(t, rel=1e-10)


def test_ray_maximum_outside_the_window(bump):
    with pytest.raises(WindowError):
        ray_maximum(bump, ExponentPair(2.5, 3.5), window=(1e-4, 1e-3))


def test_saddle_level_for_equal_exponents():
    """
    GIVEN u = v = phi_1 on (0, pi) and p = q = 3
    WHEN the saddle level is computed
    THEN it is max_t t^2 - t^4 3/(4 pi) = pi/3
    """
    phi_1 = Field.mode(build_basis(Domain.interval(np.pi), 16), 1)
    assert ls_saddle_level(phi_1, phi_1, ExponentPair(3, 3)) == pytest.approx(np.pi / 3, rel=1e-10)
