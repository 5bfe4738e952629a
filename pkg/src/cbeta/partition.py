"""Integer partitions and the diagram statistics used by the Jack machinery."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Union

Rational = Union[int, Fraction]


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions, ``AlphaParam`` and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, AlphaParam):
        return value.value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class AlphaParam:
    """Exact positive Jack parameter. ``beta`` is the matching Dyson index 2/alpha."""

    value: Fraction

    def __post_init__(self):
        v = to_fraction(self.value)
        if v <= 0:
            raise ValueError(f"Jack parameter must be positive, got {v}")
        object.__setattr__(self, "value", v)

    def inverse(self) -> "AlphaParam":
        return AlphaParam(1 / self.value)

    @property
    def beta(self) -> Fraction:
        return 2 / self.value

    @classmethod
    def from_beta(cls, beta) -> "AlphaParam":
        return cls(2 / to_fraction(beta))

    def __str__(self):
        return str(self.value)


def as_alpha(alpha) -> Fraction:
    a = to_fraction(alpha)
    if a <= 0:
        raise ValueError(f"Jack parameter must be positive, got {a}")
    return a


class Partition(tuple):
    """A weakly decreasing tuple of positive integers (trailing zeros stripped).

    >>> Partition([3, 1, 0])
    Partition(3, 1)
    >>> Partition([3, 1]).conjugate()
    Partition(2, 1, 1)
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        if isinstance(parts, Partition):
            return parts
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self):
        return "Partition(" + ", ".join(map(str, self)) + ")"

    def weight(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based row length, zero beyond the last row."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def multiplicities(self) -> dict:
        m: dict = {}
        for p in self:
            m[p] = m.get(p, 0) + 1
        return m

    def squares(self) -> Iterator["Square"]:
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield Square(i, j)

    def contains(self, other) -> bool:
        """True iff ``other`` is a subdiagram of ``self``."""
        other = Partition(other)
        return len(other) <= len(self) and all(o <= s for o, s in zip(other, self))

    def arm(self, s: "Square") -> int:
        return self[s.row - 1] - s.col

    def leg(self, s: "Square") -> int:
        return conjugate(self).part(s.col) - s.row

    def padded(self, n: int) -> tuple:
        if n < len(self):
            raise ValueError(f"cannot pad {self!r} to length {n}")
        return tuple(self) + (0,) * (n - len(self))


@dataclass(frozen=True)
class Square:
    row: int
    col: int

    def coarm(self) -> int:
        return self.col - 1

    def coleg(self) -> int:
        return self.row - 1


@lru_cache(maxsize=None)
def _conjugate(parts: tuple) -> tuple:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def conjugate(lam) -> Partition:
    return Partition(_conjugate(tuple(Partition(lam))))


def rectangle(cols: int, rows: int) -> Partition:
    """The diagram (cols^rows): ``rows`` rows of length ``cols``."""
    if cols < 0 or rows < 0:
        raise ValueError("rectangle sides must be nonnegative")
    return Partition((cols,) * rows if cols else ())


def is_rectangular(lam) -> bool:
    lam = Partition(lam)
    return len(set(lam)) <= 1


def dominance_leq(mu, lam) -> bool:
    """mu <= lam in dominance order (requires equal weight)."""
    mu, lam = Partition(mu), Partition(lam)
    if mu.weight() != lam.weight():
        return False
    s_mu = s_lam = 0
    for i in range(max(len(mu), len(lam))):
        s_mu += mu.part(i + 1)
        s_lam += lam.part(i + 1)
        if s_mu > s_lam:
            return False
    return True


def z_value(lam) -> int:
    lam = Partition(lam)
    z = 1
    for k, m in lam.multiplicities().items():
        z *= k**m
        for r in range(2, m + 1):
            z *= r
    return z


@lru_cache(maxsize=4096)
def _hooks(parts: tuple, alpha: Fraction) -> tuple:
    lam = Partition(parts)
    conj = conjugate(lam)
    c = Fraction(1)
    cp = Fraction(1)
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            a = row - j
            l = conj[j - 1] - i
            c *= alpha * a + l + 1
            cp *= alpha * a + l + alpha
    return c, cp, c / cp


def hook_products(lam, alpha) -> tuple:
    """Return ``(c, c', b)`` with c = prod(alpha*a + l + 1), c' = prod(alpha*a + l + alpha), b = c/c'."""
    return _hooks(tuple(Partition(lam)), as_alpha(alpha))


def b_coeff(lam, alpha) -> Fraction:
    return hook_products(lam, alpha)[2]


def square_b(lam, row: int, col: int, alpha: Fraction) -> Fraction:
    """Per-square factor (alpha*a + l + 1)/(alpha*a + l + alpha); 1 outside the diagram."""
    lam = Partition(lam)
    if not (1 <= row <= len(lam) and 1 <= col <= lam[row - 1]):
        return Fraction(1)
    a = lam[row - 1] - col
    l = conjugate(lam)[col - 1] - row
    return (alpha * a + l + 1) / (alpha * a + l + alpha)


def gen_pochhammer(u, lam, alpha):
    """Generalized shifted factorial prod over squares of (u - (i-1)/alpha + (j-1)).

    Exact for rational ``u``; also accepts float/complex ``u``.  The product form is
    used so nonpositive integer ``u`` never touches a Gamma pole.
    """
    lam = Partition(lam)
    alpha = as_alpha(alpha)
    if isinstance(u, (int, str)):
        u = to_fraction(u)
    out = Fraction(1) if isinstance(u, Fraction) else 1.0
    inv = 1 / alpha
    for i, row in enumerate(lam):
        shift = u - i * inv
        for j in range(row):
            out *= shift + j
    return out


def diagram_sum(lam, mu) -> Partition:
    lam, mu = Partition(lam), Partition(mu)
    n = max(len(lam), len(mu))
    return Partition(lam.part(i) + mu.part(i) for i in range(1, n + 1))


def diagram_union(lam, mu) -> Partition:
    return Partition(sorted(tuple(lam) + tuple(mu), reverse=True))


def is_fat_hook(lam, p: int, q: int) -> bool:
    if p < 0 or q < 0:
        raise ValueError("hook sizes must be nonnegative")
    return Partition(lam).part(p + 1) <= q


def _partitions_of(n: int, max_part: int, max_length: Optional[int]) -> Iterator[tuple]:
    # decreasing lexicographic order
    if n == 0:
        yield ()
        return
    if max_length is not None and max_length <= 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_length is None else max_length - 1
        for rest in _partitions_of(n - first, first, rest_len):
            yield (first,) + rest


def enumerate_partitions(
    max_part: Optional[int] = None,
    max_length: Optional[int] = None,
    max_weight: Optional[int] = None,
    min_weight: int = 0,
) -> Iterator[Partition]:
    """Yield every partition within the bounds, by weight then decreasing lex order.

    >>> [tuple(p) for p in enumerate_partitions(max_weight=2)]
    [(), (1,), (2,), (1, 1)]
    """
    if max_weight is None:
        if max_part is None or max_length is None:
            raise ValueError("unbounded enumeration: give max_weight or both max_part and max_length")
        max_weight = max_part * max_length
    for w in range(min_weight, max_weight + 1):
        mp = w if max_part is None else min(max_part, w)
        for parts in _partitions_of(w, mp, max_length):
            yield Partition(parts)


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n, decreasing lexicographic order (a linear extension of dominance)."""
    return tuple(Partition(p) for p in _partitions_of(n, n, None))


def horizontal_strips_below(lam, max_rows: Optional[int] = None) -> Iterator[Partition]:
    """All mu contained in lam such that lam/mu is a horizontal strip (interlacing)."""
    lam = Partition(lam)
    n = len(lam)
    # mu_i in [lam_{i+1}, lam_i]
    def rec(i, acc):
        if i == n:
            mu = Partition(acc)
            if max_rows is None or len(mu) <= max_rows:
                yield mu
            return
        lo = lam.part(i + 2)
        for m in range(lam[i], lo - 1, -1):
            yield from rec(i + 1, acc + [m])

    yield from rec(0, [])


def vertical_strips_below(lam) -> Iterator[Partition]:
    """All mu contained in lam such that lam/mu is a vertical strip."""
    for mu_c in horizontal_strips_below(conjugate(lam)):
        yield conjugate(mu_c)
