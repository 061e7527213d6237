"""Tests for the Lyapunov-Schmidt reduction solver."""
import numpy as np
import pytest

from hamsys.exceptions import UnsupportedRegimeError, WindowError
from hamsys.functionals.models import Framework, FrameworkConfig
from hamsys.functionals.reduction import ls_saddle_level
from hamsys.problem import ExponentPair
from hamsys.solvers.inversion import solve_inversion
from hamsys.solvers.ls_reduction import solve_ls_reduction
from hamsys.spectral import Domain, build_basis


@pytest.fixture
def interval_basis():
    return build_basis(Domain.interval(np.pi), 16)


@pytest.mark.parametrize(
    "p, q",
    [
        (3, 3),
        (2, 3),
        (2.2, 4),
    ],
)
def test_reduction_matches_the_inversion_level(interval_basis, p, q):
    e = ExponentPair(p, q)
    result = solve_ls_reduction(e, interval_basis)
    assert result.converged
    assert result.framework is Framework.LS_REDUCTION
    assert result.level == pytest.approx(solve_inversion(e, interval_basis).level, rel=1e-3)


def test_level_does_not_depend_on_lambda(interval_basis):
    """
    GIVEN the cubic pair on (0, pi)
    WHEN the reduced functional is minimized for three values of lambda
    THEN the three levels agree
    """
    e = ExponentPair(3, 3)
    levels = [solve_ls_reduction(e, interval_basis, lam=lam).level for lam in (0.5, 1.0, 2.0)]
    assert np.ptp(levels) <= 1e-3 * levels[1]


def test_lambda_defaults_to_the_configuration(interval_basis):
    cfg = FrameworkConfig(framework=Framework.LS_REDUCTION, lam=2.0)
    result = solve_ls_reduction(ExponentPair(2, 3), interval_basis, cfg)
    assert result.diagnostics["lam"] == 2.0


def test_assembled_pair_is_one_signed(interval_basis):
    result = solve_ls_reduction(ExponentPair(2.2, 4), interval_basis, lam=0.5)
    for values in (result.u.nodal, result.v.nodal):
        assert values.min() > -1e-8 * values.max()


def test_reduced_levels_never_increase(interval_basis):
    result = solve_ls_reduction(ExponentPair(2, 3), interval_basis)
    levels = [row.energy for row in result.trace]
    assert all(b <= a + 1e-12 * abs(a) for a, b in zip(levels, levels[1:]))


def test_saddle_level_at_the_ground_state_is_the_level(interval_basis):
    result = solve_ls_reduction(ExponentPair(2, 3), interval_basis)
    assert ls_saddle_level(result.u, result.v, result.exponents) == pytest.approx(result.level, rel=1e-8)


@pytest.mark.parametrize(
    "p, q",
    [
        # sublinear
        (0.5, 1.5),
        # q not above one
        (4, 1),
        (3, 0.8),
    ],
)
def test_reduction_refuses_without_h4(interval_basis, p, q):
    with pytest.raises(UnsupportedRegimeError) as info:
        solve_ls_reduction(ExponentPair(p, q), interval_basis)
    assert info.value.hypothesis == "H4"


def test_first_ray_outside_the_window(interval_basis):
    cfg = FrameworkConfig(framework=Framework.LS_REDUCTION, ray_window=(1e-4, 1e-2))
    with pytest.raises(WindowError):
        solve_ls_reduction(ExponentPair(3, 3), interval_basis, cfg)
