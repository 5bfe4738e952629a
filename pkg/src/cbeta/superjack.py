"""Super-Jack functions as point evaluators on two finite alphabets.

Q-hat_lam(x; y) is the image of Q_lam under p_k -> p_k(x) + (-1)^{k-1} alpha p_k(y).
Three independent routes compute it:

* ``"phi"``: power-sum expansion of Q_lam, then the substitution above;
* ``"skew"``: sum over nu of Q_{lam/nu}(x) P^{(1/alpha)}_{nu'}(y) via f-coefficients;
* ``"branching"``: strip-by-strip recursion in ``branching`` (any weight).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import symfun
from .branching import BranchingEvaluator
from .partition import Partition, as_alpha, b_coeff, conjugate, partitions_of
from .scalars import is_exact, scalar_from_json, scalar_to_json, unify

ROUTES = ("auto", "phi", "skew", "branching")


@dataclass(frozen=True)
class BiPointSet:
    """Two alphabets ``x`` and ``y``; entries are all exact or all complex."""

    x: tuple = ()
    y: tuple = field(default=())

    def __post_init__(self):
        x, y = unify(self.x, self.y)
        object.__setattr__(self, "x", tuple(x))
        object.__setattr__(self, "y", tuple(y))

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.x + self.y)

    def swap(self) -> "BiPointSet":
        return BiPointSet(self.y, self.x)

    def to_json(self) -> dict:
        return {"x": [scalar_to_json(v) for v in self.x], "y": [scalar_to_json(v) for v in self.y]}

    @classmethod
    def from_json(cls, obj) -> "BiPointSet":
        return cls(tuple(scalar_from_json(v) for v in obj.get("x", [])),
                   tuple(scalar_from_json(v) for v in obj.get("y", [])))


def _pts(pts) -> BiPointSet:
    if isinstance(pts, BiPointSet):
        return pts
    x, y = pts
    return BiPointSet(tuple(x), tuple(y))


def _zero(pts: BiPointSet):
    return Fraction(0) if pts.exact else 0j


def _one(pts: BiPointSet):
    return Fraction(1) if pts.exact else 1 + 0j


def phi_powersum(k: int, pts, alpha):
    """p_k(x) + (-1)^{k-1} alpha p_k(y)."""
    if k < 1:
        raise ValueError("power sums start at k = 1")
    pts = _pts(pts)
    alpha = as_alpha(alpha)
    total = _zero(pts)
    for v in pts.x:
        total += v**k
    sign = 1 if k % 2 else -1
    for v in pts.y:
        total += sign * alpha * v**k
    return total


def _phi_route(lam: Partition, pts: BiPointSet, alpha: Fraction):
    f = symfun.jack_Q_powersum(lam, alpha)
    val = symfun.eval_powersum_image(f, lambda k: phi_powersum(k, pts, alpha))
    return val if pts.exact else complex(val)


def _skew_route(lam: Partition, pts: BiPointSet, alpha: Fraction):
    dual = 1 / alpha
    total = _zero(pts)
    for w in range(lam.weight() + 1):
        for nu in partitions_of(w):
            if not lam.contains(nu):
                continue
            if len(conjugate(nu)) > len(pts.y):
                continue
            right = symfun.eval_finite(symfun.jack_P(conjugate(nu), dual), list(pts.y))
            if not right:
                continue
            left = symfun.eval_finite(symfun.skew_jack_Q(lam, nu, alpha), list(pts.x))
            total += left * right
    return total


def super_Q(lam, pts, alpha, route: str = "auto"):
    """Q-hat_lam^{(alpha)}(x; y) at the points ``pts``."""
    lam = Partition(lam)
    pts = _pts(pts)
    alpha = as_alpha(alpha)
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; choose from {ROUTES}")
    if lam.part(len(pts.x) + 1) > len(pts.y):
        return _zero(pts)
    if route == "auto":
        route = "phi" if lam.weight() <= symfun.max_jack_weight() else "branching"
    if route == "phi":
        return _phi_route(lam, pts, alpha)
    if route == "skew":
        return _skew_route(lam, pts, alpha)
    return BranchingEvaluator(pts.x, pts.y, alpha).super_Q(lam)


def super_P(lam, pts, alpha, route: str = "auto"):
    lam = Partition(lam)
    return super_Q(lam, pts, alpha, route) / b_coeff(lam, alpha)


def _series_coeffs(kind: str, points, k: int, alpha=None) -> list:
    # coefficients of t^0..t^k in prod (1 - x t)^{-1/alpha} ("g") or prod (1 + x t) ("e")
    one = Fraction(1) if all(is_exact(v) for v in points) else 1 + 0j
    coeffs = [one] + [one * 0] * k
    if kind == "g":
        a = 1 / as_alpha(alpha)
        # (1/alpha)_j / j!
        base = [one]
        for j in range(1, k + 1):
            base.append(base[-1] * (a + j - 1) / j)
    for x in points:
        if kind == "g":
            powers = [one]
            for j in range(1, k + 1):
                powers.append(powers[-1] * x)
            factor = [base[j] * powers[j] for j in range(k + 1)]
            coeffs = [sum((coeffs[i] * factor[j - i] for i in range(j + 1)), one * 0) for j in range(k + 1)]
        else:
            coeffs = [coeffs[j] + (x * coeffs[j - 1] if j else 0) for j in range(k + 1)]
    return coeffs


def g_values(k: int, points, alpha) -> list:
    """[g_0(x), ..., g_k(x)] for a finite alphabet."""
    return _series_coeffs("g", list(points), k, alpha)


def e_values(k: int, points) -> list:
    return _series_coeffs("e", list(points), k)


def g_hat(k: int, pts, alpha):
    """g-hat_k(x; y) = sum_l g_l(x) e_{k-l}(y); zero for k < 0."""
    pts = _pts(pts)
    if k < 0:
        return _zero(pts)
    g = g_values(k, pts.x, alpha)
    e = e_values(k, pts.y)
    return sum((g[l] * e[k - l] for l in range(k + 1)), _zero(pts))


def g_hat_table(kmax: int, pts, alpha) -> list:
    """[g-hat_0, ..., g-hat_kmax] in one pass."""
    pts = _pts(pts)
    if kmax < 0:
        return []
    g = g_values(kmax, pts.x, alpha)
    e = e_values(kmax, pts.y)
    return [sum((g[l] * e[k - l] for l in range(k + 1)), _zero(pts)) for k in range(kmax + 1)]


def _power(base, exponent: Fraction):
    # principal branch; exact when the exponent is an integer and the base is rational
    if exponent.denominator == 1 and is_exact(base):
        return Fraction(base) ** int(exponent)
    return cmath.exp(float(exponent) * cmath.log(complex(base)))


def super_cauchy_product(x: Sequence, u: Sequence, y: Sequence, v: Sequence, alpha):
    """prod (1-x y)^{-1/alpha} prod (1+x v) prod (1+u y) prod (1-u v)^{-alpha}."""
    alpha = as_alpha(alpha)
    x, u, y, v = unify(x, u, y, v)
    exact = all(is_exact(t) for t in x + u + y + v)
    total = Fraction(1) if exact else 1 + 0j
    for a in x:
        for b in y:
            f = 1 - a * b
            if f == 0:
                raise ValueError(f"pole: 1 - x*y vanishes at x={a}, y={b}")
            total *= _power(f, -1 / alpha)
        for b in v:
            total *= 1 + a * b
    for a in u:
        for b in y:
            total *= 1 + a * b
        for b in v:
            f = 1 - a * b
            if f == 0:
                raise ValueError(f"pole: 1 - u*v vanishes at u={a}, v={b}")
            total *= _power(f, -alpha)
    return total


def deformed_P(lam, pts, alpha):
    """P-tilde_lam(x; y): P_lam with p_k -> p_k(x) + (-1)^{k-1} p_k(y)."""
    lam = Partition(lam)
    pts = _pts(pts)
    alpha = as_alpha(alpha)
    f = symfun.jack_P_powersum(lam, alpha)
    val = symfun.eval_powersum_image(f, lambda k: phi_powersum(k, pts, 1))
    return val if pts.exact else complex(val)
