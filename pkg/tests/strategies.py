"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from cbeta.partition import Partition


def partitions(max_weight=6, max_length=None):
    def build(parts):
        return Partition(sorted(parts, reverse=True))

    size = max_weight if max_length is None else min(max_weight, max_length)
    return (
        st.lists(st.integers(1, max_weight), max_size=size)
        .filter(lambda p: sum(p) <= max_weight)
        .map(build)
    )


def rationals(bound=Fraction(1), den=9, nonzero=False):
    top = int(bound * den)
    ints = st.integers(-top, top)
    if nonzero:
        ints = ints.filter(lambda k: k != 0)
    return ints.map(lambda k: Fraction(k, den))


alphas = st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)])
