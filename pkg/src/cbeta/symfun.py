"""Exact symmetric-function algebra at a fixed rational Jack parameter.

Everything routes through the power-sum basis.  Jack P functions are built
per weight by Gram-Schmidt over the dominance-ordered monomial basis and
cached; the cache is bounded by ``max_jack_weight()``.
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence

from .partition import (
    Partition,
    as_alpha,
    conjugate,
    dominance_leq,
    hook_products,
    partitions_of,
    to_fraction,
    z_value,
)

MONOMIAL = "monomial"
POWERSUM = "powersum"
JACK_P = "jackP"
JACK_Q = "jackQ"
G_BASIS = "gBasis"
BASES = (MONOMIAL, POWERSUM, JACK_P, JACK_Q, G_BASIS)
ALPHA_BASES = frozenset({JACK_P, JACK_Q, G_BASIS})

_BASIS_ALIASES = {
    "m": MONOMIAL,
    "monomial": MONOMIAL,
    "p": POWERSUM,
    "powersum": POWERSUM,
    "power": POWERSUM,
    "P": JACK_P,
    "jackP": JACK_P,
    "jack_p": JACK_P,
    "Q": JACK_Q,
    "jackQ": JACK_Q,
    "jack_q": JACK_Q,
    "g": G_BASIS,
    "gBasis": G_BASIS,
}

_DEFAULT_MAX_WEIGHT = 12


def max_jack_weight() -> int:
    return int(os.environ.get("CBETA_MAX_JACK_WEIGHT", _DEFAULT_MAX_WEIGHT))


class JackWeightError(ValueError):
    """A Jack basis was requested above the configured weight bound."""


def basis_tag(name: str) -> str:
    try:
        return _BASIS_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown basis {name!r}; expected one of {BASES}") from None


class SymPoly:
    """Finite linear combination of basis elements with exact rational coefficients.

    ``alpha`` is carried for the alpha-dependent bases (jackP, jackQ, gBasis) and is
    ``None`` otherwise.
    """

    __slots__ = ("basis", "terms", "alpha")

    def __init__(self, basis: str, terms: Optional[Mapping] = None, alpha=None):
        basis = basis_tag(basis)
        if basis in ALPHA_BASES:
            if alpha is None:
                raise ValueError(f"basis {basis} needs a Jack parameter")
            alpha = as_alpha(alpha)
        else:
            alpha = None
        clean: Dict[Partition, Fraction] = {}
        for lam, c in (terms or {}).items():
            c = to_fraction(c)
            if c:
                lam = Partition(lam)
                clean[lam] = clean.get(lam, Fraction(0)) + c
                if not clean[lam]:
                    del clean[lam]
        self.basis = basis
        self.terms = clean
        self.alpha = alpha

    @classmethod
    def one(cls) -> "SymPoly":
        return cls(POWERSUM, {Partition(): 1})

    @classmethod
    def zero(cls, basis=POWERSUM, alpha=None) -> "SymPoly":
        return cls(basis, {}, alpha)

    @classmethod
    def basis_element(cls, basis, lam, alpha=None) -> "SymPoly":
        return cls(basis, {Partition(lam): 1}, alpha)

    def __repr__(self):
        inner = " + ".join(f"{c}*{self.basis}{tuple(lam)}" for lam, c in self.sorted_terms())
        tag = f", alpha={self.alpha}" if self.alpha is not None else ""
        return f"SymPoly({inner or '0'}{tag})"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].weight(), tuple(-p for p in kv[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, lam) -> Fraction:
        return self.terms.get(Partition(lam), Fraction(0))

    def degrees(self) -> set:
        return {lam.weight() for lam in self.terms}

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        if self.basis == other.basis and self.alpha == other.alpha:
            return self.terms == other.terms
        return to_powersum(self).terms == to_powersum(other).terms

    def __hash__(self):
        return hash(frozenset(to_powersum(self).terms.items()))

    def _same_frame(self, other: "SymPoly"):
        if self.basis == other.basis and self.alpha == other.alpha:
            return self, other
        return to_powersum(self), to_powersum(other)

    def __add__(self, other):
        if not isinstance(other, SymPoly):
            other = SymPoly(POWERSUM, {Partition(): to_fraction(other)})
        a, b = self._same_frame(other)
        terms = dict(a.terms)
        for lam, c in b.terms.items():
            terms[lam] = terms.get(lam, Fraction(0)) + c
        return SymPoly(a.basis, terms, a.alpha)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly(self.basis, {k: -v for k, v in self.terms.items()}, self.alpha)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymPoly):
            a, b = to_powersum(self), to_powersum(other)
            terms: Dict[Partition, Fraction] = {}
            for r, c in a.terms.items():
                for s, d in b.terms.items():
                    key = Partition(sorted(r + s, reverse=True))
                    terms[key] = terms.get(key, Fraction(0)) + c * d
            return SymPoly(POWERSUM, terms)
        c = to_fraction(other)
        return SymPoly(self.basis, {k: v * c for k, v in self.terms.items()}, self.alpha)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / to_fraction(other))

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "alpha": None if self.alpha is None else str(self.alpha),
            "terms": [{"part": list(lam), "coeff": str(c)} for lam, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "SymPoly":
        terms = {Partition(t["part"]): Fraction(t["coeff"]) for t in obj["terms"]}
        alpha = obj.get("alpha")
        return cls(obj["basis"], terms, None if alpha is None else Fraction(alpha))


# ---------------------------------------------------------------------------
# alpha-independent transition tables


def _count_assignments(rho: tuple, mu: tuple) -> int:
    """Number of maps from parts of rho to rows of mu with row sums equal to mu."""

    @lru_cache(maxsize=None)
    def rec(i: int, rem: tuple) -> int:
        if i == len(rho):
            return 0 if any(rem) else 1
        part = rho[i]
        total = 0
        for j, r in enumerate(rem):
            if r >= part:
                nxt = list(rem)
                nxt[j] -= part
                total += rec(i + 1, tuple(nxt))
        return total

    return rec(0, tuple(mu))


class _WeightTables:
    """Power-sum <-> monomial transition matrices at one weight."""

    def __init__(self, d: int):
        self.d = d
        self.parts = partitions_of(d)
        self.index = {lam: i for i, lam in enumerate(self.parts)}
        # p_rho = sum_mu p2m[rho][mu] m_mu
        self.p2m: Dict[Partition, Dict[Partition, Fraction]] = {}
        for rho in self.parts:
            row = {}
            for mu in self.parts:
                if dominance_leq(rho, mu):
                    c = _count_assignments(tuple(rho), tuple(mu))
                    if c:
                        row[mu] = Fraction(c)
            self.p2m[rho] = row
        self.m2p = self._invert()

    def _invert(self):
        parts = self.parts
        n = len(parts)
        # matrix A[i][j] = coefficient of m_{parts[j]} in p_{parts[i]}; we want B = A^{-1}
        # so that m_{parts[i]} = sum_j B[i][j] p_{parts[j]}.  Solve by Gauss-Jordan.
        A = [[self.p2m[parts[i]].get(parts[j], Fraction(0)) for j in range(n)] for i in range(n)]
        # B = A^{-1}: solve X A = I  <=>  A^T X^T = I
        M = [[A[j][i] for j in range(n)] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if M[r][col] != 0)
            M[col], M[piv] = M[piv], M[col]
            pv = M[col][col]
            if pv != 1:
                M[col] = [v / pv for v in M[col]]
            for r in range(n):
                if r != col and M[r][col] != 0:
                    f = M[r][col]
                    rowc = M[col]
                    M[r] = [a - f * b for a, b in zip(M[r], rowc)]
        # M right half is (A^T)^{-1} = (A^{-1})^T
        m2p = {}
        for i in range(n):
            row = {}
            for j in range(n):
                v = M[j][n + i]
                if v:
                    row[parts[j]] = v
            m2p[parts[i]] = row
        return m2p


_tables_lock = threading.Lock()
_tables: Dict[int, _WeightTables] = {}


def weight_tables(d: int) -> _WeightTables:
    t = _tables.get(d)
    if t is None:
        with _tables_lock:
            t = _tables.get(d)
            if t is None:
                t = _WeightTables(d)
                _tables[d] = t
    return t


def inner_weight(rho, alpha) -> Fraction:
    """<p_rho, p_rho>_alpha = alpha^{l(rho)} z_rho."""
    rho = Partition(rho)
    return as_alpha(alpha) ** len(rho) * z_value(rho)


# ---------------------------------------------------------------------------
# Jack basis


class _JackTable:
    def __init__(self, d: int, alpha: Fraction):
        tab = weight_tables(d)
        self.d = d
        self.alpha = alpha
        self.P_p: Dict[Partition, Dict[Partition, Fraction]] = {}
        self.P_m: Dict[Partition, Dict[Partition, Fraction]] = {}
        self.norm: Dict[Partition, Fraction] = {}
        w = {rho: inner_weight(rho, alpha) for rho in tab.parts}

        def ip(f, g):
            if len(f) > len(g):
                f, g = g, f
            return sum((c * g[r] * w[r] for r, c in f.items() if r in g), Fraction(0))

        # increasing lex order is a linear extension of dominance
        for lam in reversed(tab.parts):
            vp = dict(tab.m2p[lam])
            vm = {lam: Fraction(1)}
            for mu, pp in self.P_p.items():
                if mu == lam or not dominance_leq(mu, lam):
                    continue
                c = ip(vp, pp) / self.norm[mu]
                if not c:
                    continue
                for r, v in pp.items():
                    nv = vp.get(r, Fraction(0)) - c * v
                    if nv:
                        vp[r] = nv
                    else:
                        vp.pop(r, None)
                for r, v in self.P_m[mu].items():
                    nv = vm.get(r, Fraction(0)) - c * v
                    if nv:
                        vm[r] = nv
                    else:
                        vm.pop(r, None)
            self.P_p[lam] = vp
            self.P_m[lam] = vm
            self.norm[lam] = ip(vp, vp)


_jack_lock = threading.Lock()
_jack_tables: Dict[tuple, _JackTable] = {}


def jack_table(d: int, alpha) -> _JackTable:
    alpha = as_alpha(alpha)
    if d > max_jack_weight():
        raise JackWeightError(
            f"Jack basis at weight {d} exceeds the configured bound {max_jack_weight()}"
            " (set CBETA_MAX_JACK_WEIGHT to raise it)"
        )
    key = (d, alpha)
    t = _jack_tables.get(key)
    if t is None:
        with _jack_lock:
            t = _jack_tables.get(key)
            if t is None:
                t = _JackTable(d, alpha)
                _jack_tables[key] = t
    return t


def jack_P(lam, alpha) -> SymPoly:
    """Jack P in the monomial basis."""
    lam = Partition(lam)
    t = jack_table(lam.weight(), alpha)
    return SymPoly(MONOMIAL, t.P_m[lam])


def jack_Q(lam, alpha) -> SymPoly:
    lam = Partition(lam)
    b = hook_products(lam, alpha)[2]
    return jack_P(lam, alpha) * b


def jack_P_powersum(lam, alpha) -> SymPoly:
    lam = Partition(lam)
    return SymPoly(POWERSUM, jack_table(lam.weight(), alpha).P_p[lam])


def jack_Q_powersum(lam, alpha) -> SymPoly:
    lam = Partition(lam)
    return jack_P_powersum(lam, alpha) * hook_products(lam, alpha)[2]


def jack_norm(lam, alpha) -> Fraction:
    """<P_lam, P_lam>_alpha as computed by Gram-Schmidt (equals 1/b_lam)."""
    lam = Partition(lam)
    return jack_table(lam.weight(), alpha).norm[lam]


@lru_cache(maxsize=None)
def _g_powersum(k: int, alpha: Fraction) -> tuple:
    if k < 0:
        return ()
    return tuple(
        (rho, 1 / (z_value(rho) * alpha ** len(rho))) for rho in partitions_of(k)
    )


def g_poly(k: int, alpha) -> SymPoly:
    """g_k in the power-sum basis: degree-k part of prod (1 - x_i z)^(-1/alpha)."""
    alpha = as_alpha(alpha)
    return SymPoly(POWERSUM, dict(_g_powersum(k, alpha)))


def e_poly(k: int) -> SymPoly:
    if k < 0:
        return SymPoly.zero()
    return SymPoly(
        POWERSUM,
        {rho: Fraction((-1) ** (k - len(rho)), z_value(rho)) for rho in partitions_of(k)},
    )


def h_poly(k: int) -> SymPoly:
    return g_poly(k, 1)


def power_sum(lam) -> SymPoly:
    return SymPoly(POWERSUM, {Partition(lam): 1})


def monomial(lam) -> SymPoly:
    return SymPoly(MONOMIAL, {Partition(lam): 1})


# ---------------------------------------------------------------------------
# basis conversion


def to_powersum(f: SymPoly) -> SymPoly:
    if f.basis == POWERSUM:
        return f
    out: Dict[Partition, Fraction] = {}

    def acc(vec, c):
        for r, v in vec.items():
            out[r] = out.get(r, Fraction(0)) + c * v

    if f.basis == MONOMIAL:
        for lam, c in f.terms.items():
            acc(weight_tables(lam.weight()).m2p[lam], c)
    elif f.basis in (JACK_P, JACK_Q):
        for lam, c in f.terms.items():
            t = jack_table(lam.weight(), f.alpha)
            if f.basis == JACK_Q:
                c = c * hook_products(lam, f.alpha)[2]
            acc(t.P_p[lam], c)
    elif f.basis == G_BASIS:
        for lam, c in f.terms.items():
            prod = SymPoly.one()
            for k in lam:
                prod = prod * g_poly(k, f.alpha)
            acc(prod.terms, c)
    return SymPoly(POWERSUM, out)


def _from_powersum_to_monomial(f: SymPoly) -> SymPoly:
    out: Dict[Partition, Fraction] = {}
    for rho, c in f.terms.items():
        for mu, v in weight_tables(rho.weight()).p2m[rho].items():
            out[mu] = out.get(mu, Fraction(0)) + c * v
    return SymPoly(MONOMIAL, out)


def _by_weight(terms: Mapping) -> Dict[int, Dict[Partition, Fraction]]:
    groups: Dict[int, Dict[Partition, Fraction]] = {}
    for lam, c in terms.items():
        groups.setdefault(lam.weight(), {})[lam] = c
    return groups


def _monomial_to_jackP(f: SymPoly, alpha: Fraction) -> Dict[Partition, Fraction]:
    out: Dict[Partition, Fraction] = {}
    for d, vec in _by_weight(f.terms).items():
        t = jack_table(d, alpha)
        rem = dict(vec)
        # decreasing lex: each leading monomial coefficient is a P coefficient
        for lam in weight_tables(d).parts:
            c = rem.get(lam)
            if not c:
                continue
            out[lam] = c
            for mu, v in t.P_m[lam].items():
                nv = rem.get(mu, Fraction(0)) - c * v
                if nv:
                    rem[mu] = nv
                else:
                    rem.pop(mu, None)
        if rem:
            raise ArithmeticError("unitriangular back-solve left a remainder")
    return out


def _powersum_to_g(f: SymPoly, alpha: Fraction) -> Dict[Partition, Fraction]:
    out: Dict[Partition, Fraction] = {}
    for d, vec in _by_weight(f.terms).items():
        rem = dict(vec)
        # g_lam contains p_lam with coefficient prod 1/(lam_i*alpha) and otherwise only
        # strictly longer refinements, so peel off by increasing length
        order = sorted(partitions_of(d), key=len)
        for lam in order:
            c = rem.get(lam)
            if not c:
                continue
            lead = Fraction(1)
            for k in lam:
                lead /= k * alpha
            coef = c / lead
            out[lam] = coef
            g = to_powersum(SymPoly(G_BASIS, {lam: 1}, alpha))
            for r, v in g.terms.items():
                nv = rem.get(r, Fraction(0)) - coef * v
                if nv:
                    rem[r] = nv
                else:
                    rem.pop(r, None)
        if rem:
            raise ArithmeticError("g-basis back-solve left a remainder")
    return out


def to_basis(f: SymPoly, target: str, alpha=None) -> SymPoly:
    """Re-expand ``f`` in ``target``; ``alpha`` defaults to ``f.alpha`` for Jack targets."""
    target = basis_tag(target)
    if target in ALPHA_BASES:
        alpha = as_alpha(alpha if alpha is not None else f.alpha)
        if alpha is None:
            raise ValueError(f"target basis {target} needs a Jack parameter")
    if f.basis == target and (target not in ALPHA_BASES or f.alpha == alpha):
        return f
    p = to_powersum(f)
    if target == POWERSUM:
        return p
    if target == MONOMIAL:
        return _from_powersum_to_monomial(p)
    if target == G_BASIS:
        return SymPoly(G_BASIS, _powersum_to_g(p, alpha), alpha)
    coeffs = _monomial_to_jackP(_from_powersum_to_monomial(p), alpha)
    if target == JACK_Q:
        coeffs = {lam: c / hook_products(lam, alpha)[2] for lam, c in coeffs.items()}
    return SymPoly(target, coeffs, alpha)


# ---------------------------------------------------------------------------
# inner product, omega, structure constants


def inner_product(f: SymPoly, g: SymPoly, alpha) -> Fraction:
    alpha = as_alpha(alpha)
    a, b = to_powersum(f), to_powersum(g)
    if len(a.terms) > len(b.terms):
        a, b = b, a
    return sum(
        (c * b.terms[r] * inner_weight(r, alpha) for r, c in a.terms.items() if r in b.terms),
        Fraction(0),
    )


def omega(f: SymPoly, alpha) -> SymPoly:
    """Automorphism p_r -> (-1)^(r-1) alpha p_r, returned in the power-sum basis."""
    alpha = as_alpha(alpha)
    p = to_powersum(f)
    out = {}
    for rho, c in p.terms.items():
        sign = -1 if (rho.weight() - len(rho)) % 2 else 1
        out[rho] = c * sign * alpha ** len(rho)
    return SymPoly(POWERSUM, out)


@lru_cache(maxsize=4096)
def _product_in_P(mu: Partition, nu: Partition, alpha: Fraction) -> tuple:
    prod = jack_P_powersum(mu, alpha) * jack_P_powersum(nu, alpha)
    return tuple(to_basis(prod, JACK_P, alpha).terms.items())


def f_coeff(mu, nu, lam, alpha) -> Fraction:
    """Coefficient of P_lam in P_mu * P_nu."""
    mu, nu, lam = Partition(mu), Partition(nu), Partition(lam)
    alpha = as_alpha(alpha)
    if lam.weight() != mu.weight() + nu.weight():
        return Fraction(0)
    if (mu, nu) > (nu, mu):
        mu, nu = nu, mu
    return dict(_product_in_P(mu, nu, alpha)).get(lam, Fraction(0))


def skew_jack_P(lam, mu, alpha) -> SymPoly:
    """P_{lam/mu} = sum_nu f^lam_{mu nu} P_nu, in the jackP basis."""
    lam, mu = Partition(lam), Partition(mu)
    alpha = as_alpha(alpha)
    d = lam.weight() - mu.weight()
    if d < 0 or not lam.contains(mu):
        return SymPoly(JACK_P, {}, alpha)
    terms = {nu: f_coeff(mu, nu, lam, alpha) for nu in partitions_of(d)}
    return SymPoly(JACK_P, terms, alpha)


def skew_jack_Q(lam, mu, alpha) -> SymPoly:
    """Q_{lam/mu} = sum_nu f^lam_{mu nu} Q_nu, in the jackQ basis."""
    P = skew_jack_P(lam, mu, alpha)
    return SymPoly(JACK_Q, P.terms, P.alpha)


# ---------------------------------------------------------------------------
# evaluation in finitely many variables


def _monomial_values(points: Sequence, parts_needed: Iterable[Partition]):
    pts = list(points)
    cache: dict = {}

    def m(exps: tuple, k: int):
        # exps: sorted tuple of positive exponents to place among x_1..x_k
        if len(exps) > k:
            return 0
        if k == 0:
            return 1
        key = (exps, k)
        if key in cache:
            return cache[key]
        x = pts[k - 1]
        total = m(exps, k - 1)  # x_k gets exponent 0
        for e in sorted(set(exps)):
            i = exps.index(e)
            rest = exps[:i] + exps[i + 1:]
            total = total + x**e * m(rest, k - 1)
        cache[key] = total
        return total

    return {lam: m(tuple(lam), len(pts)) for lam in parts_needed}


def eval_finite(f: SymPoly, points: Sequence):
    """Evaluate at (x_1, ..., x_n, 0, 0, ...); exact for rational points."""
    pts = [to_fraction(x) if isinstance(x, (int, str)) else x for x in points]
    mono = to_basis(f, MONOMIAL) if f.basis != MONOMIAL else f
    vals = _monomial_values(pts, mono.terms.keys())
    zero = Fraction(0) if all(isinstance(x, Fraction) for x in pts) else 0.0
    total = zero
    for lam, c in mono.terms.items():
        v = vals[lam]
        if v:
            total = total + c * v
    return total


def powersum_value(k: int, points: Sequence):
    if not points:
        return Fraction(0)
    return sum((x**k for x in points[1:]), points[0] ** k)


def eval_powersum_image(f: SymPoly, pk) -> object:
    """Evaluate f after substituting p_k -> pk(k) for every power sum."""
    p = to_powersum(f)
    cache = {}
    total = Fraction(0)
    for rho, c in p.terms.items():
        term = c
        for k in rho:
            if k not in cache:
                cache[k] = pk(k)
            term = term * cache[k]
        total = total + term
    return total
