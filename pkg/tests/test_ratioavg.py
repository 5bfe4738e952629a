from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbeta.ensemble import EnsembleParams, QuadratureConfig
from cbeta.partition import rectangle
from cbeta.ratioavg import (
    NotApplicable,
    RatioQuery,
    TruncationPolicy,
    applicable_routes,
    asymptotic_product,
    cross_check,
    dual_query,
    duality_check,
    evaluate,
    hypergeometric_2F1,
    product_average,
    quadrature,
    ratio_hyperdet_even_beta,
    ratio_hyperdet_even_dual,
    ratio_inverse_power_one,
    ratio_pfaffian_coe_cse,
    ratio_thm1,
    ratio_thm2,
)
from cbeta.symfun import eval_finite, monomial
from strategies import rationals

F = Fraction


def Q(n, beta, **kw):
    return RatioQuery(EnsembleParams(n, beta), **kw)


def close(a, b, tol):
    return abs(complex(a) - complex(b)) < tol


def test_query_validation_and_json():
    with pytest.raises(ValueError):
        Q(1, 2, v=(1,))
    with pytest.raises(ValueError):
        Q(1, 2, x_conj=(0,))
    with pytest.raises(ValueError):
        Q(1, 2, conj_mode="sideways")
    q = Q(2, F(2, 3), x_conj=(F(3, 2),), x_plain=(F(-1, 5),), u=(F(1, 7),), v=(0.25,))
    assert not q.exact
    assert RatioQuery.from_json(q.to_json()) == q
    assert q.as_direct().as_inverse() == q
    assert (q.L, q.K, q.S, q.T, q.power()) == (1, 1, 1, 1, F(1, 3))


def test_small_examples():
    assert product_average(Q(1, 2, x_conj=(2,), x_plain=(F(1, 3),))).value == F(7, 6)
    x, y = F(2, 5), F(-3, 7)
    assert ratio_thm2(Q(1, 2, x_conj=(x,), x_plain=(y,), conj_mode="direct")).value == 1 + x * y
    assert ratio_thm1(Q(1, 2, x_conj=(2,), v=(F(1, 4),))).value == F(9, 8)
    empty = Q(3, F(5, 2), x_plain=(F(1, 2), F(-2, 3)))
    for route in ("product", "thm1", "thm2"):
        assert evaluate(empty, route).value == 1


def test_empty_query_gives_exact_one():
    q = Q(2, 1)
    for route in applicable_routes(q):
        val = evaluate(q, route).value
        assert close(val, 1, 1e-12)


def test_thm1_forms_agree():
    q = Q(2, F(2, 3), x_conj=(F(3, 2), -3), x_plain=(F(1, 5),), v=(F(1, 4), F(-1, 3)))
    vals = {f: ratio_thm1(q, form=f).value for f in ("specialP", "specialQ", "series")}
    assert len(set(vals.values())) == 1
    assert ratio_thm1(q).meta["form"] == "specialP"
    with pytest.raises(NotApplicable):
        ratio_thm1(Q(1, 2, u=(F(1, 3),)), form="specialQ")
    with pytest.raises(ValueError):
        ratio_thm1(q, form="nope")


def test_thm2_forms_agree():
    q = Q(2, F(3, 2), x_conj=(F(1, 2),), x_plain=(F(1, 3), F(-1, 4)), u=(F(1, 5),), conj_mode="direct")
    a = ratio_thm2(q)
    b = ratio_thm2(q, form="orthogonality")
    assert a.exact and a.value == b.value


def test_beta_four_inverse_power_example():
    q = Q(2, 4, v=(F(1, 4),))
    series = hypergeometric_2F1("inverse", (0, 0), (F(1, 4), 0), q.params)
    t2 = ratio_thm2(q)
    quad = quadrature(q)
    assert close(series.value, t2.value, 1e-12)
    assert close(quad.value, t2.value, 1e-10)
    # only holomorphic factors: the average is exactly one
    assert t2.value == 1


def test_unitary_two_alphabet_product():
    a, b = F(1, 3), F(-2, 5)
    assert hypergeometric_2F1("product", (a,), (b,), EnsembleParams(1, 2)).value == 1 + a * b
    with pytest.raises(ValueError):
        hypergeometric_2F1("product", (a, a), (b,), EnsembleParams(2, 2))


@pytest.mark.parametrize("beta", [F(1), F(2), F(4), F(2, 3), F(5, 2)])
def test_inverse_2F1_matches_thm2(beta):
    n = 2
    x, y = (F(1, 5), F(-1, 4)), (F(1, 3), F(1, 6))
    params = EnsembleParams(n, beta)
    series = hypergeometric_2F1("inverse", x, y, params, TruncationPolicy(max_weight=20))
    q = Q(n, beta, u=x, v=y)
    assert close(series.value, ratio_thm2(q, TruncationPolicy(max_weight=20)).value, 1e-9)
    assert close(series.value, quadrature(q).value, 1e-8)


def test_asymptotic_product():
    q = Q(1, 2, x_conj=(F(1, 2),), x_plain=(F(1, 2),), conj_mode="direct")
    assert asymptotic_product(q) == F(4, 3)
    # at beta = 2 the finite-n average is a partial geometric series
    big = Q(12, 2, x_conj=(F(1, 2),), x_plain=(F(1, 2),), conj_mode="direct")
    assert close(ratio_thm2(big).value, F(4, 3), 1e-7)


def test_low_temperature_proxy():
    x = (F(2), F(1, 3))
    q = Q(2, 2000, x_conj=(x[0],), x_plain=(x[1],))
    n = 2
    # Jack P at huge alpha approaches the monomial function
    want = x[0] ** -n * eval_finite(monomial(rectangle(n, 1)), list(x))
    got = product_average(q).value
    assert close(got, want, 1e-2)


def test_not_applicable():
    with pytest.raises(NotApplicable):
        product_average(Q(1, 2, u=(F(1, 3),)))
    with pytest.raises(NotApplicable):
        ratio_hyperdet_even_beta(Q(1, 1, x_conj=(2,)))
    with pytest.raises(NotApplicable):
        ratio_hyperdet_even_dual(Q(1, 4, x_conj=(2,)))
    with pytest.raises(NotApplicable):
        ratio_pfaffian_coe_cse(Q(1, 2, x_conj=(2,)))
    with pytest.raises(NotApplicable):
        ratio_inverse_power_one(Q(1, 4, v=(F(1, 3),)))
    with pytest.raises(NotApplicable):
        ratio_thm1(Q(1, 4, v=(F(1, 3),), denom_power=1))
    with pytest.raises(ValueError):
        evaluate(Q(1, 2), "nope")


def test_applicable_routes():
    assert applicable_routes(Q(2, 1, x_conj=(2,))) == [
        "product", "thm1", "thm2", "hyperdet_dual", "pfaffian", "quadrature"]
    assert applicable_routes(Q(2, 4, x_conj=(2,), v=(F(1, 2),))) == [
        "thm1", "thm2", "hyperdet_even", "pfaffian", "quadrature"]
    assert applicable_routes(Q(2, 1, v=(F(1, 2),), denom_power=1)) == ["power_one", "quadrature"]


@pytest.mark.parametrize("beta", [F(1), F(2), F(4), F(2, 3), F(1, 2), F(6)])
def test_exact_routes_agree(beta):
    q = Q(2, beta, x_conj=(F(3, 2), -2), x_plain=(F(1, 5),), v=(F(1, 4),))
    res = cross_check(q, [r for r in applicable_routes(q) if r != "quadrature"])
    assert res["agree_exact"]
    assert len(res["results"]) >= 3


@pytest.mark.parametrize("beta", [F(1), F(2), F(4), F(2, 3)])
def test_quadrature_agrees(beta):
    q = Q(2, beta, x_conj=(F(3, 2),), x_plain=(F(1, 5),), v=(F(1, 4), F(-1, 3)))
    exact = ratio_thm1(q).value
    assert close(quadrature(q).value, exact, 1e-9)


def test_infinite_series_reports_truncation():
    q = Q(2, 1, x_conj=(F(3, 2),), u=(F(1, 4),), v=(F(1, 3),))
    val = ratio_thm1(q)
    assert not val.exact and val.meta["converged"]
    assert val.truncation_report[-1][0] <= 24
    assert close(val.value, quadrature(q).value, 1e-9)
    assert close(val.value, ratio_thm2(q).value, 1e-9)
    short = ratio_thm1(q, TruncationPolicy(max_weight=3, tol=1e-14))
    assert not short.meta["converged"]


def test_pfaffian_both_ensembles():
    coe = Q(2, 1, x_conj=(F(2),), x_plain=(F(1, 3),), v=(F(1, 5),))
    assert ratio_pfaffian_coe_cse(coe).value == ratio_thm1(coe).value
    cse = Q(2, 4, x_conj=(F(2), F(-3)), v=(F(1, 5), F(1, 7)))
    assert ratio_pfaffian_coe_cse(cse).value == ratio_thm1(cse).value
    with pytest.raises(NotApplicable):
        ratio_pfaffian_coe_cse(coe, which="CSE")


def test_power_one_forms():
    q = Q(2, 1, x_conj=(F(2),), x_plain=(F(1, 3),), v=(F(1, 4), F(-1, 5)), denom_power=1)
    a = ratio_inverse_power_one(q)
    b = ratio_inverse_power_one(q, form="repeated")
    assert a.value == b.value
    assert close(quadrature(q).value, a.value, 1e-8)


def test_duality_example():
    q = Q(1, 2, x_conj=(F(1, 2),), v=(F(1, 3),))
    left, right = duality_check(q)
    assert left.value == right.value
    d = dual_query(q)
    assert d.n == 1 and d.beta == 2 and d.x_conj == (F(1, 3),) and d.v == (F(1, 2),)
    none_left, none_right = duality_check(Q(1, 2, v=(F(1, 3),)))
    assert none_left.value == none_right.value == 1


@settings(max_examples=15)
@given(st.sampled_from([F(1), F(2), F(4), F(2, 3), F(3, 2)]), st.integers(1, 2), st.integers(0, 2), st.data())
def test_duality_property(beta, n, m, data):
    small = rationals(F(1, 2), den=7, nonzero=True)
    xs = tuple(data.draw(st.lists(small, min_size=m, max_size=m)))
    vs = tuple(data.draw(st.lists(small, min_size=n, max_size=n + 1)))
    q = Q(n, beta, x_conj=xs, v=vs)
    left, right = duality_check(q)
    assert left.value == right.value


def test_cross_check_report():
    q = Q(1, 2, x_conj=(F(2),), x_plain=(F(1, 3),))
    res = cross_check(q, quad=QuadratureConfig(points_per_dim=16))
    assert res["agree_exact"]
    assert res["max_float_discrepancy"] < 1e-12
    assert {r["route"] for r in res["routes"]} >= {"product", "thm1", "thm2", "quadrature"}
    res = cross_check(Q(1, 1, x_conj=(2,)), ["hyperdet_even", "thm1"])
    assert res["skipped"][0]["route"] == "hyperdet_even"
