"""Point evaluation of Jack and super-Jack functions by branching rules.

Adding one variable to P_lam peels off a horizontal strip with coefficient
psi_{lam/mu}; adding one variable of the omega-twisted alphabet peels off a
vertical strip with the dual coefficient psi^{(1/alpha)}_{lam'/mu'}.  Only
partitions below lam are ever visited, so this scales to weights far beyond
the Gram-Schmidt tables in ``symfun``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .partition import (
    Partition,
    as_alpha,
    conjugate,
    hook_products,
    horizontal_strips_below,
    square_b,
)


@lru_cache(maxsize=200_000)
def psi(lam: Partition, mu: Partition, alpha: Fraction) -> Fraction:
    """Branching coefficient of P_lam(x_1..x_n) onto x_n^{|lam/mu|} P_mu(x_1..x_{n-1}).

    Product over squares in rows meeting lam/mu but columns not meeting it.
    """
    rows = {i for i in range(1, len(lam) + 1) if lam.part(i) > mu.part(i)}
    cols = set()
    for i in rows:
        cols.update(range(mu.part(i) + 1, lam.part(i) + 1))
    out = Fraction(1)
    for i in rows:
        for j in range(1, mu.part(i) + 1):
            if j not in cols:
                out *= square_b(mu, i, j, alpha) / square_b(lam, i, j, alpha)
    return out


@lru_cache(maxsize=200_000)
def phi(lam: Partition, mu: Partition, alpha: Fraction) -> Fraction:
    """Branching coefficient for Q: product over squares in columns meeting lam/mu."""
    rows = {i for i in range(1, len(lam) + 1) if lam.part(i) > mu.part(i)}
    cols = set()
    for i in rows:
        cols.update(range(mu.part(i) + 1, lam.part(i) + 1))
    conj = conjugate(lam)
    out = Fraction(1)
    for j in cols:
        for i in range(1, conj.part(j) + 1):
            out *= square_b(lam, i, j, alpha) / square_b(mu, i, j, alpha)
    return out


@lru_cache(maxsize=50_000)
def _hstrips(lam: Partition) -> tuple:
    return tuple((mu, lam.weight() - mu.weight()) for mu in horizontal_strips_below(lam))


@lru_cache(maxsize=50_000)
def _vstrips(lam: Partition) -> tuple:
    out = []
    for mu_c in horizontal_strips_below(conjugate(lam)):
        mu = conjugate(mu_c)
        out.append((mu, lam.weight() - mu.weight()))
    return tuple(out)


class BranchingEvaluator:
    """Memoized Jack / super-Jack values on a fixed pair of alphabets.

    ``x`` is the ordinary alphabet, ``y`` the omega-twisted one.  Values are exact
    when every point is a Fraction (or int), otherwise complex floats.
    """

    def __init__(self, x: Sequence, y: Sequence = (), alpha=1):
        self.alpha = as_alpha(alpha)
        self.dual = 1 / self.alpha
        self.x = list(x)
        self.y = list(y)
        self.exact = all(isinstance(v, (int, Fraction)) for v in self.x + self.y)
        self._P: dict = {}
        self._S: dict = {}

    def _zero(self):
        return Fraction(0) if self.exact else 0.0

    def P(self, lam, k: int = None):
        """P_lam(x_1..x_k) (all of x by default)."""
        lam = Partition(lam)
        if k is None:
            k = len(self.x)
        return self._p(lam, k)

    def _p(self, lam: Partition, k: int):
        if len(lam) > k:
            return self._zero()
        if k == 0 or not lam:
            return Fraction(1) if self.exact else 1.0
        key = (lam, k)
        hit = self._P.get(key)
        if hit is not None:
            return hit
        xk = self.x[k - 1]
        total = self._zero()
        for mu, d in _hstrips(lam):
            if len(mu) > k - 1:
                continue
            if d and not xk:
                continue
            sub = self._p(mu, k - 1)
            if sub:
                total = total + psi(lam, mu, self.alpha) * (xk**d) * sub
        self._P[key] = total
        return total

    def Q(self, lam, k: int = None):
        lam = Partition(lam)
        return hook_products(lam, self.alpha)[2] * self.P(lam, k)

    def super_Q(self, lam, q: int = None):
        """Q-hat_lam(x; y_1..y_q)."""
        lam = Partition(lam)
        if q is None:
            q = len(self.y)
        return self._s(lam, q)

    def _s(self, lam: Partition, q: int):
        if q == 0:
            return hook_products(lam, self.alpha)[2] * self._p(lam, len(self.x))
        # fat (p, q)-hook support
        if lam.part(len(self.x) + 1) > q:
            return self._zero()
        key = (lam, q)
        hit = self._S.get(key)
        if hit is not None:
            return hit
        yq = self.y[q - 1]
        total = self._zero()
        for mu, d in _vstrips(lam):
            if d and not yq:
                continue
            sub = self._s(mu, q - 1)
            if sub:
                total = total + psi(conjugate(lam), conjugate(mu), self.dual) * (yq**d) * sub
        self._S[key] = total
        return total

    def super_P(self, lam, q: int = None):
        lam = Partition(lam)
        return self.super_Q(lam, q) / hook_products(lam, self.alpha)[2]
