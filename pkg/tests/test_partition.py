from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cbeta.partition import (
    AlphaParam,
    Partition,
    b_coeff,
    conjugate,
    diagram_sum,
    diagram_union,
    dominance_leq,
    enumerate_partitions,
    gen_pochhammer,
    hook_products,
    horizontal_strips_below,
    is_fat_hook,
    is_rectangular,
    partitions_of,
    rectangle,
    vertical_strips_below,
    z_value,
)
from strategies import alphas, partitions

F = Fraction


def test_partition_normalizes_and_validates():
    assert Partition([3, 1, 0, 0]) == (3, 1)
    assert Partition([3, 1]).weight() == 4
    assert Partition([3, 1]).length() == 2
    assert Partition([3, 1]).part(3) == 0
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, -1])
    with pytest.raises(ValueError):
        Partition([2]).padded(0)
    assert Partition([2]).padded(3) == (2, 0, 0)


def test_alpha_param():
    a = AlphaParam(F(1, 2))
    assert a.inverse().value == 2
    assert AlphaParam.from_beta(4).value == F(1, 2)
    with pytest.raises(ValueError):
        AlphaParam(F(0))


@pytest.mark.parametrize(
    "lam, want",
    [((3, 1), (2, 1, 1)), ((), ()), ((4, 4), (2, 2, 2, 2))],
)
def test_conjugate_examples(lam, want):
    assert conjugate(lam) == want


def test_rectangle():
    assert rectangle(4, 2) == (4, 4)
    assert conjugate(rectangle(4, 2)) == rectangle(2, 4)
    assert is_rectangular((3, 3, 3)) and not is_rectangular((3, 2))
    assert is_rectangular(())


@pytest.mark.parametrize(
    "mu, lam, want",
    [((1, 1, 1), (3,), True), ((2, 2), (3, 1), True), ((2, 1), (2, 2), False), ((3,), (1, 1, 1), False)],
)
def test_dominance_examples(mu, lam, want):
    assert dominance_leq(mu, lam) is want


@pytest.mark.parametrize("lam, want", [((1, 1, 1), 6), ((2, 1, 1), 4), ((3,), 3), ((), 1)])
def test_z_value(lam, want):
    assert z_value(lam) == want


def test_hook_products_examples():
    a = F(3, 5)
    c, cp, b = hook_products((2,), a)
    assert (c, cp, b) == (a + 1, 2 * a * a, (a + 1) / (2 * a * a))
    assert hook_products((), a) == (1, 1, 1)


def test_gen_pochhammer_examples():
    assert gen_pochhammer(2, (3,), F(7, 3)) == 24
    assert gen_pochhammer(F(5, 2), (), 2) == 1
    lhs = gen_pochhammer(3, conjugate((2, 1)), 2)
    rhs = (-F(1, 2)) ** 3 * gen_pochhammer(-3 / F(1, 2), (2, 1), F(1, 2))
    assert lhs == rhs


def test_diagram_operations():
    assert diagram_sum((2, 1), (1, 1)) == (3, 2)
    assert diagram_union((2, 1), (3,)) == (3, 2, 1)
    # (3) u (2) against the conjugate of (1,1,1) + (1,1)
    assert conjugate(diagram_union((3,), (2,))) == diagram_sum(conjugate((3,)), conjugate((2,)))


def test_fat_hook_examples():
    assert is_fat_hook((5, 5, 2), 2, 2)
    assert not is_fat_hook((5, 5, 3), 2, 2)
    assert is_fat_hook((), 0, 0)


def test_enumeration_examples():
    got = [tuple(p) for p in enumerate_partitions(max_weight=3)]
    assert got == [(), (1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]
    assert [tuple(p) for p in enumerate_partitions(max_part=1, max_weight=2)] == [(), (1,), (1, 1)]
    assert len(list(enumerate_partitions(max_part=2, max_length=2, max_weight=4))) == 6
    with pytest.raises(ValueError):
        list(enumerate_partitions(max_part=2))


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


@given(partitions(8))
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).weight() == lam.weight()


@given(partitions(8))
def test_invariants(lam):
    assert all(a >= b >= 1 for a, b in zip(lam, lam[1:]))
    assert all(p >= 1 for p in lam)
    assert lam.weight() == sum(lam)


@given(partitions(7), partitions(7))
def test_dominance_reverses_under_conjugation(mu, lam):
    if mu.weight() != lam.weight():
        assert not dominance_leq(mu, lam)
        return
    assert dominance_leq(mu, lam) == dominance_leq(conjugate(lam), conjugate(mu))


@given(partitions(7), partitions(7))
def test_sum_and_union_are_conjugate(lam, mu):
    assert conjugate(diagram_sum(lam, mu)) == diagram_union(conjugate(lam), conjugate(mu))


@given(partitions(7), alphas)
def test_b_duality(lam, alpha):
    assert b_coeff(lam, alpha) * b_coeff(conjugate(lam), 1 / alpha) == 1


@given(partitions(6), alphas, st.sampled_from([F(-2), F(-1, 2), F(1), F(3)]))
def test_pochhammer_duality(lam, alpha, u):
    lhs = gen_pochhammer(u, conjugate(lam), 1 / alpha)
    rhs = (-alpha) ** lam.weight() * gen_pochhammer(-u / alpha, lam, alpha)
    assert lhs == rhs


@given(partitions(7))
def test_enumeration_order_is_linear_extension_of_dominance(lam):
    order = partitions_of(lam.weight())
    pos = order.index(lam)
    assert all(not dominance_leq(lam, mu) or mu == lam for mu in order[pos + 1:])


@given(partitions(7))
def test_strips(lam):
    for mu in horizontal_strips_below(lam):
        assert lam.contains(mu)
        assert all(mu.part(i) >= lam.part(i + 1) for i in range(1, len(lam) + 1))
    for mu in vertical_strips_below(lam):
        assert lam.contains(mu)
        assert all(0 <= a - b <= 1 for a, b in zip(lam.padded(len(lam)), mu.padded(len(lam))))
