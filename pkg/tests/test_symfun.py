from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cbeta import symfun
from cbeta.partition import Partition, b_coeff, conjugate, dominance_leq, gen_pochhammer, hook_products, partitions_of
from cbeta.symfun import (
    SymPoly,
    e_poly,
    eval_finite,
    f_coeff,
    g_poly,
    h_poly,
    inner_product,
    jack_P,
    jack_Q,
    monomial,
    omega,
    power_sum,
    skew_jack_Q,
    to_basis,
    to_powersum,
)
from strategies import alphas, partitions, rationals

F = Fraction


def terms(f):
    return {tuple(k): v for k, v in f.terms.items()}


def test_basis_conversions_examples():
    assert terms(to_basis(power_sum((1,)), "monomial")) == {(1,): 1}
    assert terms(to_powersum(monomial((1, 1)))) == {(1, 1): F(1, 2), (2,): F(-1, 2)}
    a = F(2, 5)
    assert terms(g_poly(1, a)) == {(1,): 1 / a}


def test_inner_product_examples():
    a = F(3, 7)
    assert inner_product(power_sum((2,)), power_sum((2,)), a) == 2 * a
    assert inner_product(power_sum((1, 1)), power_sum((2,)), a) == 0
    assert inner_product(jack_P((2,), a), jack_Q((2,), a), a) == 1


@pytest.mark.parametrize("alpha", [F(1, 2), F(1), F(5, 3)])
def test_jack_P_examples(alpha):
    for k in range(1, 6):
        assert terms(jack_P((1,) * k, alpha)) == {(1,) * k: 1}
    assert terms(jack_P((2,), alpha)) == {(2,): 1, (1, 1): 2 / (alpha + 1)}


def test_schur_at_alpha_one():
    assert terms(jack_P((2, 1), 1)) == {(2, 1): 1, (1, 1, 1): 2}
    for lam in partitions_of(5):
        assert jack_Q(lam, 1) == jack_P(lam, 1)


def test_jack_Q_examples():
    a = F(4, 3)
    assert terms(jack_Q((1,), a)) == {(1,): 1 / a}
    for k in range(0, 6):
        assert to_powersum(jack_Q((k,), a)) == to_powersum(g_poly(k, a))


def test_g_examples():
    a = F(2, 3)
    assert terms(g_poly(0, a)) == {(): 1}
    assert terms(to_basis(g_poly(2, 1), "monomial")) == {(2,): 1, (1, 1): 1}
    assert terms(g_poly(2, a)) == {(1, 1): 1 / (2 * a * a), (2,): 1 / (2 * a)}
    assert to_powersum(h_poly(3)) == to_powersum(g_poly(3, 1))


def test_f_coeff_examples():
    a = F(5, 2)
    assert f_coeff((1,), (1,), (2,), a) == 1
    assert f_coeff((1,), (1,), (1, 1), a) == 2 * a / (a + 1)
    assert f_coeff((1,), (2,), (2, 1), 1) == 1
    assert f_coeff((2,), (1,), (2, 2), a) == 0


def test_skew_examples():
    a = F(3, 4)
    assert to_powersum(skew_jack_Q((2, 1), (2, 1), a)) == SymPoly.one()
    assert to_powersum(skew_jack_Q((2,), (1,), a)) == to_powersum(jack_Q((1,), a))
    assert skew_jack_Q((2, 2), (3,), a).is_zero()


def test_omega_examples():
    a = F(2, 7)
    assert terms(omega(power_sum((2,)), a)) == {(2,): -a}
    assert omega(h_poly(2), 1) == to_powersum(e_poly(2))
    half = F(1, 2)
    assert omega(jack_P((2,), half), half) == to_powersum(jack_Q((1, 1), 2))


def test_evaluation_examples():
    a = F(5, 3)
    assert eval_finite(jack_P((3, 1), a), [F(1, 2)]) == 0
    # P_lam(1^n) = alpha^|lam| [n/alpha]_lam / c_lam
    half = F(1, 2)
    lam, n = Partition((2, 1)), 3
    want = half ** 3 * gen_pochhammer(n / half, lam, half) / hook_products(lam, half)[0]
    assert eval_finite(jack_P(lam, half), [1] * n) == want
    x = [F(2, 3), F(-1, 5)]
    assert eval_finite(jack_P((2, 1), a), x) == x[0] * x[1] * eval_finite(jack_P((1,), a), x)


def test_json_roundtrip():
    f = jack_Q((2, 1), F(1, 3))
    assert SymPoly.from_json(f.to_json()) == f


def test_weight_bound(monkeypatch):
    monkeypatch.setenv("CBETA_MAX_JACK_WEIGHT", "3")
    with pytest.raises(symfun.JackWeightError):
        jack_P((2, 2), F(7, 11))


def test_mixed_frames_meet_in_powersums():
    f = SymPoly("jackP", {(2,): 1}, F(1, 2)) + SymPoly("jackQ", {(1, 1): 1}, F(2))
    assert f.basis == "powersum"
    assert f == to_powersum(jack_P((2,), F(1, 2))) + to_powersum(jack_Q((1, 1), 2))
    with pytest.raises(ValueError):
        SymPoly("jackP", {(1,): 1})


@given(partitions(7), alphas)
def test_triangular_and_monic(lam, alpha):
    P = jack_P(lam, alpha)
    assert P.coeff(lam) == 1
    assert all(dominance_leq(mu, lam) for mu in P.terms)


@given(st.integers(1, 7), alphas, st.data())
def test_orthogonality(d, alpha, data):
    parts = partitions_of(d)
    lam = data.draw(st.sampled_from(parts))
    mu = data.draw(st.sampled_from(parts))
    ip = inner_product(jack_P(lam, alpha), jack_P(mu, alpha), alpha)
    assert ip == (1 / b_coeff(lam, alpha) if lam == mu else 0)


@given(partitions(7), alphas)
def test_omega_swaps_P_and_Q(lam, alpha):
    assert omega(jack_P(lam, alpha), alpha) == to_powersum(jack_Q(conjugate(lam), 1 / alpha))


@given(partitions(6), alphas)
def test_omega_inverse(lam, alpha):
    f = jack_Q(lam, alpha)
    assert omega(omega(f, alpha), 1 / alpha) == to_powersum(f)


@given(partitions(6), alphas, st.sampled_from(["monomial", "powersum", "jackP", "jackQ", "gBasis"]))
def test_conversion_roundtrip(lam, alpha, basis):
    f = jack_P(lam, alpha) + monomial(lam)
    g = to_basis(f, basis, alpha)
    assert to_powersum(g) == to_powersum(f)


@given(st.integers(0, 6), alphas, st.lists(rationals(), min_size=1, max_size=3),
       st.lists(rationals(), min_size=1, max_size=3))
def test_cauchy_identity_by_degree(d, alpha, x, y):
    lhs = sum((eval_finite(jack_P(l, alpha), x) * eval_finite(jack_Q(l, alpha), y) for l in partitions_of(d)),
              F(0))
    # degree-d coefficient of prod (1 - x_i y_j t)^(-1/alpha), one pair at a time
    coeffs = [F(1)] + [F(0)] * d
    for a in x:
        for b in y:
            series = [F(1)]
            for k in range(1, d + 1):
                series.append(series[-1] * (1 / alpha + k - 1) / k * a * b)
            coeffs = [sum(coeffs[i] * series[k - i] for i in range(k + 1)) for k in range(d + 1)]
    assert lhs == coeffs[d]


@given(st.integers(0, 6), alphas, st.lists(rationals(), min_size=1, max_size=3),
       st.lists(rationals(), min_size=1, max_size=3))
def test_dual_cauchy_by_degree(d, alpha, x, y):
    lhs = sum((eval_finite(jack_P(l, alpha), x) * eval_finite(jack_P(conjugate(l), 1 / alpha), y)
               for l in partitions_of(d)), F(0))
    coeffs = [F(1)] + [F(0)] * d
    for a in x:
        for b in y:
            coeffs = [coeffs[k] + (a * b * coeffs[k - 1] if k else 0) for k in range(d + 1)]
    assert lhs == coeffs[d]


@pytest.mark.parametrize("lam", [(2,), (2, 1), (3, 1), (2, 2), (1, 1, 1)])
def test_alpha_limits(lam):
    # alpha -> infinity gives m_lam; alpha -> 0 gives e_{lam'}
    big = jack_P(lam, F(10**6))
    assert big.coeff(lam) == 1
    assert all(abs(c) < F(1, 10**4) for mu, c in big.terms.items() if mu != lam)
    small = to_powersum(jack_P(lam, F(1, 10**6)))
    e = SymPoly.one()
    for k in conjugate(lam):
        e = e * e_poly(k)
    diff = small - to_powersum(e)
    assert all(abs(c) < F(1, 10**4) for c in diff.terms.values())
