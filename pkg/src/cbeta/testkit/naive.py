"""Brute-force symmetric polynomials in explicit variables.

Everything here is written from scratch on purpose: the oracle below must not
share code with ``cbeta.symfun`` or ``cbeta.partition``, so that a disagreement
points at one side.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache


class NaivePoly:
    """Polynomial in ``nvars`` variables, stored as {exponent tuple: Fraction}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in sorted(clean.items()) if c}

    @classmethod
    def constant(cls, nvars, c=1):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __repr__(self):
        return f"NaivePoly({self.nvars}, {self.terms})"

    def __eq__(self, other):
        if not isinstance(other, NaivePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return NaivePoly(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return NaivePoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NaivePoly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return NaivePoly(self.nvars, out)

    __rmul__ = scale

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def __call__(self, point):
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                term = term * x**k
            total += term
        return total

    def is_symmetric(self, samples=None, seed=0):
        """Check invariance under every permutation, or ``samples`` random ones."""
        if samples is None:
            perms = itertools.permutations(range(self.nvars))
        else:
            rng = random.Random(seed)
            perms = [rng.sample(range(self.nvars), self.nvars) for _ in range(samples)]
        for perm in perms:
            moved = {tuple(e[i] for i in perm): c for e, c in self.terms.items()}
            if moved != self.terms:
                return False
        return True

    def restrict(self, nvars):
        """Set the variables past ``nvars`` to zero."""
        out = {e[:nvars]: c for e, c in self.terms.items() if not any(e[nvars:])}
        return NaivePoly(nvars, out)


def _partitions(d, largest=None):
    if largest is None:
        largest = d
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            yield (first,) + rest


def naive_power_sum(k, nvars):
    return NaivePoly(nvars, {tuple(k if i == j else 0 for j in range(nvars)): 1 for i in range(nvars)})


def naive_monomial(lam, nvars):
    """m_lam: the sum of all distinct permutations of lam padded with zeros."""
    lam = tuple(p for p in lam if p)
    if len(lam) > nvars:
        return NaivePoly(nvars)
    padded = lam + (0,) * (nvars - len(lam))
    return NaivePoly(nvars, {e: 1 for e in set(itertools.permutations(padded))})


def naive_elementary(k, nvars):
    return naive_monomial((1,) * k, nvars)


def _centralizer(rho):
    out = 1
    for part in set(rho):
        m = rho.count(part)
        out *= part**m * math.factorial(m)
    return out


def _solve(rows, rhs):
    """Exact Gauss-Jordan for a square or overdetermined consistent system."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_row = 0
    where = [-1] * ncols
    for col in range(ncols):
        sel = next((r for r in range(piv_row, len(aug)) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[piv_row], aug[sel] = aug[sel], aug[piv_row]
        pv = aug[piv_row][col]
        aug[piv_row] = [v / pv for v in aug[piv_row]]
        for r in range(len(aug)):
            if r != piv_row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[piv_row])]
        where[col] = piv_row
        piv_row += 1
    if -1 in where:
        raise ValueError("singular system")
    for r in range(piv_row, len(aug)):
        if aug[r][-1] != 0:
            raise ValueError("inconsistent system")
    return [aug[where[c]][-1] for c in range(ncols)]


@lru_cache(maxsize=None)
def _monomials_in_powersums(d, nvars):
    """Coordinates of each m_mu (|mu| = d) in the p_rho basis, found by matching coefficients."""
    parts = list(_partitions(d))
    pvecs = []
    for rho in parts:
        poly = NaivePoly.constant(nvars)
        for k in rho:
            poly = poly * naive_power_sum(k, nvars)
        pvecs.append(poly)
    # one equation per sorted exponent vector (the symmetric ones suffice)
    keys = [lam + (0,) * (nvars - len(lam)) for lam in parts]
    rows = [[pv.coeff(key) for pv in pvecs] for key in keys]
    coords = {}
    for mu in parts:
        rhs = [Fraction(1 if key == mu + (0,) * (nvars - len(mu)) else 0) for key in keys]
        coords[mu] = _solve(rows, rhs)
    return parts, coords


def oracle_jack(lam, alpha, nvars):
    """P_lam^{(alpha)} in ``nvars`` variables by Gram-Schmidt on monomials.

    Works in max(nvars, |lam|) variables so that power sums are independent, then
    sets the extra variables to zero.
    """
    lam = tuple(int(p) for p in lam if p)
    alpha = Fraction(alpha)
    d = sum(lam)
    if d > 8:
        raise ValueError("the oracle is capped at weight 8")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if d == 0:
        return NaivePoly.constant(nvars)
    work = max(nvars, d)
    parts, coords = _monomials_in_powersums(d, work)
    gram = [alpha ** len(rho) * _centralizer(rho) for rho in parts]

    def inner(a, b):
        return sum(x * y * g for x, y, g in zip(a, b, gram))

    # increasing lexicographic order is a linear extension of dominance
    order = sorted(parts)
    basis = {}
    for mu in order:
        vec = list(coords[mu])
        mono = {mu: Fraction(1)}
        for nu in order:
            if nu == mu:
                break
            bv, bm = basis[nu]
            c = inner(coords[mu], bv) / inner(bv, bv)
            vec = [a - c * b for a, b in zip(vec, bv)]
            for k, v in bm.items():
                mono[k] = mono.get(k, 0) - c * v
        basis[mu] = (vec, mono)
        if mu == lam:
            break
    out = NaivePoly(work)
    for mu, c in basis[lam][1].items():
        if c:
            out = out + naive_monomial(mu, work).scale(c)
    return out.restrict(nvars)
