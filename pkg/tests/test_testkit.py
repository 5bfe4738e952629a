from fractions import Fraction

import pytest

from cbeta.ensemble import EnsembleParams
from cbeta.ratioavg import RatioQuery, ratio_thm1
from cbeta.testkit import (
    NaivePoly,
    dyson_gamma,
    exact_det,
    lr_coefficient,
    naive_elementary,
    naive_monomial,
    naive_power_sum,
    oracle_average,
    oracle_jack,
)

F = Fraction


def test_naive_poly_arithmetic():
    x, y = NaivePoly.variable(2, 0), NaivePoly.variable(2, 1)
    f = (x + y) * (x - y)
    assert f == x * x - y * y
    assert f.coeff((2, 0)) == 1 and f.coeff((1, 1)) == 0
    assert f((F(3), F(1))) == 8
    assert (x * y).is_symmetric() and not f.is_symmetric()
    assert (x + y).restrict(1) == NaivePoly.variable(1, 0)


def test_naive_bases():
    assert naive_power_sum(2, 3)((1, 2, 3)) == 14
    assert naive_monomial((2, 1), 3)((1, 1, 1)) == 6
    assert naive_elementary(2, 3)((1, 2, 3)) == 11
    assert naive_elementary(4, 3) == NaivePoly(3)


def test_oracle_jack_examples():
    assert oracle_jack((1, 1, 1), F(3, 5), 3) == naive_elementary(3, 3)
    assert oracle_jack((2,), 1, 2) == naive_monomial((2,), 2) + naive_monomial((1, 1), 2)
    a = F(1, 2)
    assert oracle_jack((2,), a, 3) == naive_monomial((2,), 3) + naive_monomial((1, 1), 3).scale(2 / (a + 1))
    assert oracle_jack((), 2, 2) == NaivePoly.constant(2)
    with pytest.raises(ValueError):
        oracle_jack((9,), 1, 1)
    with pytest.raises(ValueError):
        oracle_jack((1,), 0, 1)


def test_lr_examples():
    assert lr_coefficient((2, 1), (1,), (1, 1)) == 1
    assert lr_coefficient((3, 2, 1), (2, 1), (2, 1)) == 2
    assert lr_coefficient((2, 2), (1,), (2,)) == 0
    assert lr_coefficient((2,), (1,), (1, 1)) == 0


def test_exact_det():
    assert exact_det([[1, 2], [3, 4]]) == -2
    assert exact_det([]) == 1
    assert exact_det([[0, 1], [1, 0]]) == -1
    with pytest.raises(ValueError):
        exact_det([[1, 2]])


@pytest.mark.parametrize("n, beta, want", [(3, 2, 6), (2, 4, 6), (1, 3, 1)])
def test_dyson_gamma(n, beta, want):
    assert dyson_gamma(n, beta) == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("n, beta", [(1, F(2, 3)), (2, 2), (2, 1), (2, F(3, 2)), (3, 4)])
def test_oracle_average_matches_exact(n, beta):
    q = RatioQuery(EnsembleParams(n, beta), x_conj=(F(2),), x_plain=(F(1, 3),), v=(F(1, 4),))
    got = oracle_average(q, grid=32)
    assert abs(got.complex() - complex(ratio_thm1(q).value)) < 1e-10
    if got.meta["method"] == "offset-trapezoid":
        assert got.meta["normalization"] == pytest.approx(dyson_gamma(n, beta), rel=1e-9)


def test_oracle_limits():
    with pytest.raises(ValueError):
        oracle_average(RatioQuery(EnsembleParams(4, 2)))
