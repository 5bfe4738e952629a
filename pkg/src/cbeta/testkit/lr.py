"""Littlewood-Richardson coefficients by counting tableaux, and an exact determinant."""

from __future__ import annotations

from fractions import Fraction


def lr_coefficient(lam, mu, nu):
    """c^lam_{mu nu}: semistandard fillings of lam/mu with content nu whose
    right-to-left, top-to-bottom reading word is a lattice word."""
    lam = [p for p in lam if p]
    mu = [p for p in mu if p]
    nu = [p for p in nu if p]
    if sum(lam) != sum(mu) + sum(nu) or len(mu) > len(lam):
        return 0
    mu = mu + [0] * (len(lam) - len(mu))
    if any(m > l for m, l in zip(mu, lam)):
        return 0
    cells = [(r, c) for r in range(len(lam)) for c in range(lam[r] - 1, mu[r] - 1, -1)]
    filling = {}
    counts = [0] * (len(nu) + 1)

    def place(k):
        if k == len(cells):
            return 1
        r, c = cells[k]
        hi = len(nu)
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = filling.get((r - 1, c))
        if above is not None:
            lo = above + 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += place(k + 1)
            del filling[(r, c)]
            counts[v] -= 1
        return total

    return place(0)


def exact_det(rows):
    """Determinant of a square matrix of rationals by fraction-exact elimination."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det
