"""Tests for the Nehari degeneracy demo and domain monotonicity."""
import numpy as np
import pytest

from hamsys.exceptions import DomainError, UnsupportedRegimeError
from hamsys.problem import ExponentPair
from hamsys.solvers.monotonicity import domain_monotonicity, is_nested
from hamsys.solvers.nehari import nehari_degeneracy_demo
from hamsys.spectral import Domain, Field, build_basis


@pytest.fixture
def phi_1():
    return Field.mode(build_basis(Domain.interval(np.pi), 16), 1)


def test_first_row_for_the_cubic_pair(phi_1):
    """
    GIVEN u = phi_1 on (0, pi) and p = q = 3
    WHEN (t u, t u) is put on the Nehari set
    THEN t^2 (3/(2 pi) + 3/(2 pi)) = 2, so t = (2 pi / 3)^{1/2}
    """
    (row,) = nehari_degeneracy_demo(ExponentPair(3, 3), phi_1, [1.0])
    assert row.admissible
    assert row.t == pytest.approx(np.sqrt(2 * np.pi / 3), rel=1e-10)
    assert row.norm == pytest.approx(row.t * np.sqrt(2), rel=1e-12)


def test_norms_decrease_toward_zero(phi_1):
    rows = nehari_degeneracy_demo(ExponentPair(3, 3), phi_1, [1, 10, 100, 1000])
    norms = [row.norm for row in rows]
    assert all(b < a for a, b in zip(norms, norms[1:]))
    assert norms[-1] < 0.1 * norms[0]


@pytest.mark.parametrize(
    "p, q",
    [
        (3, 3),
        (2, 4),
        # p below one
        (0.5, 3),
    ],
)
def test_rows_satisfy_the_defining_identity(phi_1, p, q):
    rows = nehari_degeneracy_demo(ExponentPair(p, q), phi_1, [1, 10, 100])
    for row in rows:
        assert row.admissible
        assert row.identity_residual <= 1e-10


def test_small_lambda_with_p_below_one_has_no_admissible_t(phi_1):
    # t^{-1/2} X + t^2 lam^4 Y stays above 2 lam D for lam = 1e-6
    (row,) = nehari_degeneracy_demo(ExponentPair(0.5, 3), phi_1, [1e-6])
    assert not row.admissible
    assert row.note
    assert row.to_dict()["admissible"] is False


def test_demo_rejects_zero_and_sublinear_input(phi_1):
    with pytest.raises(ValueError):
        nehari_degeneracy_demo(ExponentPair(3, 3), 0 * phi_1, [1.0])
    with pytest.raises(UnsupportedRegimeError):
        nehari_degeneracy_demo(ExponentPair(0.5, 1.5), phi_1, [1.0])


@pytest.mark.parametrize(
    "small, large, expected",
    [
        (Domain.interval(2.0), Domain.interval(np.pi), True),
        (Domain.disk(1.0), Domain.disk(0.5), False),
        (Domain.rectangle(1.0, 2.0), Domain.rectangle(2.0, 2.0), True),
        # different kinds never nest
        (Domain.interval(1.0), Domain.disk(2.0), False),
    ],
)
def test_is_nested(small, large, expected):
    assert is_nested(small, large) is expected


def test_level_decreases_on_a_larger_interval():
    report = domain_monotonicity(ExponentPair(3, 3), Domain.interval(2.0), Domain.interval(np.pi), modes=24)
    assert report.monotone
    assert report.level_large < report.level_small
    assert report.to_dict()["monotone"] is True


def test_monotonicity_refuses_domains_that_do_not_nest():
    with pytest.raises(DomainError):
        domain_monotonicity(ExponentPair(3, 3), Domain.disk(2.0), Domain.disk(1.0))
