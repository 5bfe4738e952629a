from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cbeta.branching import BranchingEvaluator
from cbeta.partition import Partition, conjugate, enumerate_partitions, partitions_of
from cbeta.superjack import (
    BiPointSet,
    deformed_P,
    g_hat,
    phi_powersum,
    super_cauchy_product,
    super_P,
    super_Q,
)
from cbeta.symfun import eval_finite, jack_P, jack_Q
from strategies import alphas, partitions, rationals

F = Fraction
points = st.lists(rationals(), max_size=2)


def test_phi_powersum_examples():
    a = F(7, 4)
    assert phi_powersum(1, ((F(3, 5),), ()), a) == F(3, 5)
    assert phi_powersum(2, ((), (F(2, 3),)), a) == -a * F(4, 9)
    assert phi_powersum(1, ((F(1, 2),), (F(1, 3),)), 2) == F(7, 6)


def test_super_Q_examples():
    assert super_Q((2,), ((F(1, 2), F(1, 3)), ()), 1) == F(19, 36)
    assert super_Q((2,), ((), (F(1, 2),)), 2) == 0
    assert super_Q((3, 3), ((F(1, 3),), (F(1, 5),)), F(3, 2)) == 0
    assert super_Q((1,), ((F(1, 3),), (F(1, 4),)), 1) == F(7, 12)


def test_g_hat_examples():
    a = F(2, 5)
    pts = ((F(1, 3),), (F(-1, 7),))
    assert g_hat(0, pts, a) == 1
    assert g_hat(-1, pts, a) == 0
    assert g_hat(1, pts, a) == F(1, 3) / a - F(1, 7)
    x = (F(1, 2), F(2, 3))
    for k in range(5):
        assert g_hat(k, (x, ()), a) == eval_finite(jack_Q((k,), a), list(x))


def test_super_cauchy_examples():
    assert super_cauchy_product((), (), (), (), 3) == 1
    assert super_cauchy_product((F(1, 2),), (), (F(1, 2),), (), 1) == F(4, 3)
    with pytest.raises(ValueError):
        super_cauchy_product((F(1),), (), (F(1),), (), 1)


def test_super_cauchy_truncated_series():
    x, u, y, v = (F(1, 5),), (F(1, 7),), (F(1, 6),), (F(1, 8),)
    a = F(2)
    total = complex(super_cauchy_product(x, u, y, v, a))
    partial = [F(0)]
    for lam in enumerate_partitions(max_weight=10):
        partial.append(partial[-1] + super_P(lam, (x, u), a) * super_Q(lam, (y, v), a))
    tail = abs(complex(partial[-1]) - total)
    assert tail < 1e-8
    # degree-4 truncation is within a geometric tail of the product
    s4 = sum((super_P(l, (x, u), a) * super_Q(l, (y, v), a) for l in enumerate_partitions(max_weight=4)), F(0))
    assert abs(complex(s4) - total) < 1e-3


def test_deformed_examples():
    half = F(1, 2)
    a, b = F(1, 3), F(1, 5)
    assert deformed_P((1,), ((a,), (b,)), half) == a + b
    assert super_P((1,), ((a,), (b, b)), half) == a + b
    x = (F(1, 2), F(-1, 3))
    assert deformed_P((2, 1), (x, ()), F(3, 2)) == eval_finite(jack_P((2, 1), F(3, 2)), list(x))
    # at alpha = 1 the deformed and super forms coincide
    assert deformed_P((2, 1), (x, (b,)), 1) == super_P((2, 1), (x, (b,)), 1)


def test_bipointset():
    pts = BiPointSet((F(1, 2), 1), ("1/3",))
    assert pts.exact
    assert pts.swap() == BiPointSet(("1/3",), (F(1, 2), 1))
    assert BiPointSet.from_json(pts.to_json()) == pts
    mixed = BiPointSet((0.5,), (F(1, 3),))
    assert not mixed.exact


def test_routes_reject_unknown():
    with pytest.raises(ValueError):
        super_Q((1,), ((F(1, 2),), ()), 1, route="nope")


@given(partitions(6), alphas, points, points)
def test_routes_agree(lam, alpha, x, y):
    vals = {r: super_Q(lam, (x, y), alpha, route=r) for r in ("phi", "skew", "branching")}
    assert len(set(vals.values())) == 1


@given(partitions(6), alphas, points, points)
def test_conjugate_duality(lam, alpha, x, y):
    assert super_Q(lam, (x, y), alpha) == super_P(conjugate(lam), (y, x), 1 / alpha)


@given(partitions(7), alphas, st.integers(0, 2), st.integers(0, 2), st.data())
def test_fat_hook_vanishing(lam, alpha, p, q, data):
    x = data.draw(st.lists(rationals(), min_size=p, max_size=p))
    y = data.draw(st.lists(rationals(), min_size=q, max_size=q))
    if lam.part(p + 1) > q:
        assert super_Q(lam, (x, y), alpha, route="phi") == 0


@given(partitions(6), alphas, st.lists(rationals(), max_size=3))
def test_empty_second_alphabet(lam, alpha, x):
    assert super_Q(lam, (x, ()), alpha) == eval_finite(jack_Q(lam, alpha), x)
    assert super_Q(lam, ((), x), alpha) == eval_finite(jack_P(conjugate(lam), 1 / alpha), x)


@given(st.integers(0, 7), alphas, points, points)
def test_g_hat_is_one_row_super_Q(k, alpha, x, y):
    assert g_hat(k, (x, y), alpha) == super_Q(Partition((k,)), (x, y), alpha)


@given(partitions(6), alphas, st.lists(rationals(), min_size=1, max_size=3))
def test_branching_matches_tables(lam, alpha, x):
    ev = BranchingEvaluator(x, (), alpha)
    assert ev.P(lam) == eval_finite(jack_P(lam, alpha), x)
    assert ev.Q(lam) == eval_finite(jack_Q(lam, alpha), x)


def test_branching_high_weight_is_consistent():
    # weight 16 is beyond the Gram-Schmidt tables; check symmetry and the conjugate duality
    lam = Partition((5, 4, 4, 3))
    x = (F(1, 2), F(-1, 3), F(2, 5))
    y = (F(1, 7), F(-2, 9))
    a = F(3, 2)
    v1 = BranchingEvaluator(x, y, a).super_Q(lam)
    v2 = BranchingEvaluator(tuple(reversed(x)), tuple(reversed(y)), a).super_Q(lam)
    assert v1 == v2
    assert v1 == BranchingEvaluator(y, x, 1 / a).super_P(conjugate(lam))


def test_complex_points():
    x = (0.3 + 0.1j, -0.2j)
    y = (0.25,)
    a = F(2)
    exact = super_Q((2, 1), ((F(3, 10), F(0)), (F(1, 4),)), a)
    val = super_Q((2, 1), ((0.3 + 0j, 0j), (0.25,)), a)
    assert abs(val - complex(exact)) < 1e-14
    assert isinstance(super_Q((2, 1), (x, y), a), complex)


def test_weight_four_outside_the_hook_vanishes():
    a = F(1, 2)
    x, y = (F(1, 3),), (F(1, 4),)
    for lam in partitions_of(4):
        val = super_Q(lam, (x, y), a)
        if lam.part(2) > 1:
            assert val == 0
