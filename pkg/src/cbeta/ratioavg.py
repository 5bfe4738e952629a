"""Ratio averages of characteristic polynomials over the circular beta-ensemble.

A ``RatioQuery`` describes

    < prod_l Psi(zbar; c(x_l)) prod_k Psi(z; x_{L+k})
      / (prod_s Psi(zbar; -u_s)^d prod_t Psi(z; -v_t)^d) >

where c(x) = 1/x ("inverse" conjugated numerators) or c(x) = x ("direct"), and
d = beta/2 unless ``denom_power`` overrides it.  Each route below evaluates the
same quantity independently; ``cross_check`` runs several and compares them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from . import multialt, superjack
from .branching import BranchingEvaluator
from .ensemble import (
    AverageValue,
    EnsembleParams,
    PsiFactor,
    QuadratureConfig,
    quadrature_average,
)
from .partition import (
    Partition,
    as_alpha,
    b_coeff,
    conjugate,
    diagram_union,
    enumerate_partitions,
    gen_pochhammer,
    rectangle,
    to_fraction,
)
from .scalars import is_exact, scalar_from_json, scalar_to_json, unify

CONJ_MODES = ("inverse", "direct")


class NotApplicable(ValueError):
    """The route's hypotheses do not hold for this query."""


@dataclass(frozen=True)
class RatioQuery:
    params: EnsembleParams
    x_conj: tuple = ()
    x_plain: tuple = ()
    u: tuple = ()
    v: tuple = ()
    conj_mode: str = "inverse"
    denom_power: Optional[Fraction] = None

    def __post_init__(self):
        if self.conj_mode not in CONJ_MODES:
            raise ValueError(f"conj_mode must be one of {CONJ_MODES}")
        xc, xp, u, v = unify(self.x_conj, self.x_plain, self.u, self.v)
        object.__setattr__(self, "x_conj", tuple(xc))
        object.__setattr__(self, "x_plain", tuple(xp))
        object.__setattr__(self, "u", tuple(u))
        object.__setattr__(self, "v", tuple(v))
        if self.denom_power is not None:
            object.__setattr__(self, "denom_power", to_fraction(self.denom_power))
        if self.conj_mode == "inverse" and any(x == 0 for x in xc):
            raise ValueError("inverted conjugated numerator points must be nonzero")
        for name, pts in (("u", u), ("v", v)):
            if any(abs(complex(p)) >= 1 for p in pts):
                raise ValueError(f"denominator points {name} must lie strictly inside the unit disc")

    # sizes
    @property
    def L(self) -> int:
        return len(self.x_conj)

    @property
    def K(self) -> int:
        return len(self.x_plain)

    @property
    def S(self) -> int:
        return len(self.u)

    @property
    def T(self) -> int:
        return len(self.v)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def beta(self) -> Fraction:
        return self.params.beta

    @property
    def alpha(self) -> Fraction:
        return self.params.alpha()

    @property
    def exact(self) -> bool:
        return all(is_exact(t) for t in self.x_conj + self.x_plain + self.u + self.v)

    def power(self) -> Fraction:
        return self.beta / 2 if self.denom_power is None else self.denom_power

    def standard_power(self) -> bool:
        return self.power() == self.beta / 2

    def as_inverse(self) -> "RatioQuery":
        """Same average with conjugated numerators written as Psi(zbar; 1/x)."""
        if self.conj_mode == "inverse":
            return self
        # Psi(zbar; 0) = 1 contributes nothing
        pts = tuple(1 / x for x in self.x_conj if x != 0)
        return replace(self, x_conj=pts, conj_mode="inverse")

    def as_direct(self) -> "RatioQuery":
        if self.conj_mode == "direct":
            return self
        return replace(self, x_conj=tuple(1 / x for x in self.x_conj), conj_mode="direct")

    def factors(self) -> List[PsiFactor]:
        d = self.power()
        out = []
        for x in self.x_conj:
            out.append(PsiFactor(1 / x if self.conj_mode == "inverse" else x, True, 1))
        for x in self.x_plain:
            out.append(PsiFactor(x, False, 1))
        for u in self.u:
            out.append(PsiFactor(-u, True, -d))
        for v in self.v:
            out.append(PsiFactor(-v, False, -d))
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "beta": scalar_to_json(self.beta),
            "x_conj": [scalar_to_json(t) for t in self.x_conj],
            "x_plain": [scalar_to_json(t) for t in self.x_plain],
            "u": [scalar_to_json(t) for t in self.u],
            "v": [scalar_to_json(t) for t in self.v],
            "conj_mode": self.conj_mode,
            "denom_power": None if self.denom_power is None else scalar_to_json(self.denom_power),
        }

    @classmethod
    def from_json(cls, obj) -> "RatioQuery":
        def pts(key):
            return tuple(scalar_from_json(t) for t in obj.get(key, []))

        dp = obj.get("denom_power")
        return cls(
            EnsembleParams(int(obj["n"]), to_fraction(str(obj["beta"]))),
            pts("x_conj"),
            pts("x_plain"),
            pts("u"),
            pts("v"),
            obj.get("conj_mode", "inverse"),
            None if dp is None else to_fraction(str(dp)),
        )


@dataclass(frozen=True)
class TruncationPolicy:
    max_weight: int = 24
    convergence_window: int = 3
    tol: float = 1e-10

    def __post_init__(self):
        if self.max_weight < 1:
            raise ValueError("max_weight must be at least 1")
        if self.convergence_window < 1:
            raise ValueError("convergence_window must be at least 1")


def _prod(values, start):
    out = start
    for v in values:
        out = out * v
    return out


def _one(exact: bool):
    return Fraction(1) if exact else 1 + 0j


def _require(cond: bool, msg: str):
    if not cond:
        raise NotApplicable(msg)


def _require_standard_power(q: RatioQuery):
    _require(q.standard_power(), "route needs the denominator power beta/2")


# ---------------------------------------------------------------------------
# series bookkeeping


@dataclass
class _Series:
    exact: bool
    finite: bool
    policy: TruncationPolicy
    by_degree: dict = field(default_factory=dict)

    def add(self, degree: int, term):
        self.by_degree[degree] = self.by_degree.get(degree, 0) + term

    def result(self, route: str, prefactor, meta: Optional[dict] = None) -> AverageValue:
        meta = dict(meta or {})
        degrees = sorted(self.by_degree)
        total = _one(self.exact) * 0
        partial = []
        for d in degrees:
            total = total + prefactor * self.by_degree[d]
            partial.append((d, total))
        if self.finite:
            return AverageValue(total, route, exact=self.exact, meta=meta)
        w = self.policy.convergence_window
        scale = max(1.0, abs(complex(total)))
        tail = [abs(complex(prefactor * self.by_degree.get(d, 0))) for d in
                range(self.policy.max_weight - w + 1, self.policy.max_weight + 1)]
        converged = all(t <= self.policy.tol * scale for t in tail)
        meta.update({"converged": converged, "max_weight": self.policy.max_weight,
                     "tail": max(tail) if tail else 0.0})
        return AverageValue(complex(total), route, exact=False, truncation_report=partial, meta=meta)


def _bounded_partitions(max_part: int, max_weight: int, row_limit: Optional[int] = None,
                        hook: Iterable = ()) -> Iterable[Partition]:
    """Partitions with lam_1 <= max_part, weight <= max_weight, ell <= row_limit,
    and lam_{p+1} <= q for every (p, q) in ``hook``."""
    if max_part <= 0:
        yield Partition()
        return
    for lam in enumerate_partitions(max_part=max_part, max_length=row_limit, max_weight=max_weight):
        if all(lam.part(p + 1) <= q for p, q in hook):
            yield lam


# ---------------------------------------------------------------------------
# routes


def product_average(q: RatioQuery) -> AverageValue:
    """(x_1..x_L)^{-n} P^{(beta/2)}_{(n^L)}(x) for S = T = 0."""
    _require(q.S == 0 and q.T == 0, "product average needs S = T = 0")
    q = q.as_inverse()
    alpha_dual = 1 / q.alpha
    lam = rectangle(q.n, q.L)
    x = q.x_conj + q.x_plain
    val = superjack.super_P(lam, (x, ()), alpha_dual)
    pref = _prod(q.x_conj, _one(q.exact)) ** (-q.n)
    return AverageValue(pref * val, "product", exact=q.exact)


def ratio_thm1(q: RatioQuery, trunc: Optional[TruncationPolicy] = None, form: str = "auto") -> AverageValue:
    """First expression: a sum over mu with mu_1 <= n of super-Jack values at (x; v) times Q_{mu'}(u).

    With S = 0 only mu = empty survives.  ``form`` picks how that case is evaluated:
    "auto"/"specialP" use (x_1..x_L)^{-n} P-hat^{(beta/2)}_{(n^L)}(x; v), "specialQ" the
    conjugate form Q-hat^{(2/beta)}_{(L^n)}(v; x), and "series" runs the general sum.
    """
    _require_standard_power(q)
    if form not in ("auto", "specialP", "specialQ", "series"):
        raise ValueError("form must be one of auto, specialP, specialQ, series")
    trunc = trunc or TruncationPolicy()
    q = q.as_inverse()
    n, L, K, S, T = q.n, q.L, q.K, q.S, q.T
    alpha = q.alpha
    dual = 1 / alpha
    x = q.x_conj + q.x_plain
    rect = rectangle(n, L)
    pref = _prod(q.x_conj, _one(q.exact)) ** (-n)
    if form in ("specialP", "specialQ"):
        _require(S == 0, f"{form} form needs S = 0")
    if S == 0 and form in ("auto", "specialP"):
        val = superjack.super_P(rect, (x, q.v), dual)
        return AverageValue(pref * val, "thm1", exact=q.exact, meta={"form": "specialP"})
    if form == "specialQ":
        val = superjack.super_Q(conjugate(rect), (q.v, x), alpha)
        return AverageValue(pref * val, "thm1", exact=q.exact, meta={"form": "specialQ"})
    # Q_{mu'}(u) needs mu_1 <= S; Q-hat_{(n^L) u mu}(x; v) needs mu_{K+1} <= T
    finite = S == 0 or T == 0
    exact = q.exact and finite
    if exact:
        xs, vs, us = x, q.v, q.u
    else:
        xs, vs, us = ([complex(t) for t in g] for g in (x, q.v, q.u))
    sup = BranchingEvaluator(xs, vs, dual)
    qu = BranchingEvaluator(us, (), alpha)
    rect_ratio = gen_pochhammer(-n, rect, dual) / gen_pochhammer(-n + 1 - alpha, rect, dual)
    a = -n - alpha * L
    b = -n + 1 - (L + 1) * alpha
    series = _Series(exact, finite, trunc)
    if finite:
        rows = K
        max_w = K * min(n, S)
    else:
        rows, max_w = None, trunc.max_weight
    for mu in _bounded_partitions(min(n, S), max_w, rows, hook=[(K, T)]):
        lam = diagram_union(rect, mu)
        val = sup.super_Q(lam)
        if not val:
            continue
        qv = qu.Q(conjugate(mu))
        if not qv:
            continue
        coef = gen_pochhammer(a, mu, dual) / gen_pochhammer(b, mu, dual)
        series.add(mu.weight(), coef * val * qv)
    out_pref = pref * rect_ratio if exact else complex(pref) * float(rect_ratio)
    return series.result("thm1", out_pref, {"form": "series"})


def _thm2_coefficient(lam: Partition, n: int, alpha: Fraction) -> Fraction:
    dual = 1 / alpha
    return gen_pochhammer(-n, lam, dual) / gen_pochhammer(-n + 1 - alpha, lam, dual)


def ratio_thm2(q: RatioQuery, trunc: Optional[TruncationPolicy] = None, form: str = "direct") -> AverageValue:
    """Second expression: sum over lam_1 <= n of P-hat(x; u) Q-hat(y; v) at parameter beta/2.

    ``form="orthogonality"`` evaluates the intermediate sum over ell(lam) <= n at
    parameter 2/beta with conjugate shapes instead; it must agree term by term.
    """
    _require_standard_power(q)
    if form not in ("direct", "orthogonality"):
        raise ValueError("form must be 'direct' or 'orthogonality'")
    trunc = trunc or TruncationPolicy()
    q = q.as_direct()
    n, L, K, S, T = q.n, q.L, q.K, q.S, q.T
    alpha = q.alpha
    dual = 1 / alpha
    finite = S == 0 or T == 0
    exact = q.exact and finite
    if exact:
        x, y, u, v = q.x_conj, q.x_plain, q.u, q.v
    else:
        x, y, u, v = ([complex(t) for t in g] for g in (q.x_conj, q.x_plain, q.u, q.v))
    series = _Series(exact, finite, trunc)
    if finite:
        # ell(lam) <= L when S = 0, ell(lam) <= K when T = 0
        rows = L if S == 0 else K
        max_w = n * rows
    else:
        rows, max_w = None, trunc.max_weight
    hooks = [(L, S), (K, T)]
    if form == "direct":
        left = BranchingEvaluator(x, u, dual)
        right = BranchingEvaluator(y, v, dual)
        for lam in _bounded_partitions(n, max_w, rows, hooks):
            a = left.super_P(lam)
            if not a:
                continue
            b = right.super_Q(lam)
            if not b:
                continue
            series.add(lam.weight(), _thm2_coefficient(lam, n, alpha) * a * b)
    else:
        left = BranchingEvaluator(u, x, alpha)
        right = BranchingEvaluator(v, y, alpha)
        for lam in _bounded_partitions(n, max_w, rows, hooks):
            mu = conjugate(lam)
            a = left.super_Q(mu)
            if not a:
                continue
            b = right.super_P(mu)
            if not b:
                continue
            coef = gen_pochhammer(Fraction(n) / alpha, mu, alpha) / gen_pochhammer(1 + (n - 1) / alpha, mu, alpha)
            series.add(mu.weight(), coef * a * b)
    return series.result("thm2", _one(exact), {"form": form})


def _even_p(beta: Fraction) -> Optional[int]:
    half = beta / 2
    return int(half) if half.denominator == 1 else None


def _shifted_hyperdet(offset: int, dim: int, p: int, pts, budget=None):
    if dim == 0:
        return Fraction(1)
    table = superjack.g_hat_table(offset + p * (dim - 1), pts, Fraction(1, p))
    return multialt.hyperdet(multialt.HyperArray.shifted(p, dim, offset, table), budget=budget)


def ratio_hyperdet_even_beta(q: RatioQuery, budget: Optional[int] = None) -> AverageValue:
    """beta = 2p: (n!(p!)^n/(pn)!) (x_1..x_L)^{-n} Det^(2p)(g-hat_{L + ...}(v; x)) of size n."""
    _require_standard_power(q)
    p = _even_p(q.beta)
    _require(p is not None, "hyperdeterminant route needs beta = 2p with integer p")
    _require(q.S == 0, "hyperdeterminant route needs S = 0")
    q = q.as_inverse()
    n = q.n
    pts = superjack.BiPointSet(q.v, q.x_conj + q.x_plain)
    det = _shifted_hyperdet(q.L, n, p, pts, budget)
    pref = Fraction(math.factorial(n) * math.factorial(p) ** n, math.factorial(p * n))
    val = pref * _prod(q.x_conj, _one(q.exact)) ** (-n) * det
    return AverageValue(val, "hyperdet_even", exact=q.exact, meta={"p": p})


def ratio_hyperdet_even_dual(q: RatioQuery, budget: Optional[int] = None) -> AverageValue:
    """beta = 2/p: b^{(p)}_{(L^n)} (L!(p!)^L/(pL)!) (x_1..x_L)^{-n} Det^(2p)(g-hat_{n + ...}(x; v)) of size L."""
    _require_standard_power(q)
    _require(q.beta.numerator == 2 or (2 / q.beta).denominator == 1, "dual hyperdeterminant route needs beta = 2/p")
    inv = 2 / q.beta
    _require(inv.denominator == 1, "dual hyperdeterminant route needs beta = 2/p")
    p = int(inv)
    _require(q.S == 0, "hyperdeterminant route needs S = 0")
    q = q.as_inverse()
    n, L = q.n, q.L
    pts = superjack.BiPointSet(q.x_conj + q.x_plain, q.v)
    det = _shifted_hyperdet(n, L, p, pts, budget)
    pref = b_coeff(rectangle(L, n), p) * Fraction(math.factorial(L) * math.factorial(p) ** L, math.factorial(p * L))
    val = pref * _prod(q.x_conj, _one(q.exact)) ** (-n) * det
    return AverageValue(val, "hyperdet_dual", exact=q.exact, meta={"p": p})


def ratio_pfaffian_coe_cse(q: RatioQuery, which: Optional[str] = None) -> AverageValue:
    """Pfaffian forms at beta = 1 (size 2L) and beta = 4 (size 2n)."""
    _require_standard_power(q)
    _require(q.S == 0, "Pfaffian route needs S = 0")
    if which is None:
        which = {Fraction(1): "COE", Fraction(4): "CSE"}.get(q.beta)
    _require(which in ("COE", "CSE"), "Pfaffian route needs beta = 1 (COE) or beta = 4 (CSE)")
    _require(q.beta == (1 if which == "COE" else 4), f"{which} Pfaffian needs beta = {1 if which == 'COE' else 4}")
    q = q.as_inverse()
    n, L = q.n, q.L
    half = Fraction(1, 2)
    if which == "COE":
        size = 2 * L
        table = superjack.g_hat_table(n + 2 * L, (q.x_conj + q.x_plain, q.v), half)
        shift = n + 2 * L + 1
        pref = Fraction(1, math.prod(n + 2 * j + 1 for j in range(L)))
    else:
        size = 2 * n
        table = superjack.g_hat_table(L + 2 * n, (q.v, q.x_conj + q.x_plain), half)
        shift = L + 2 * n + 1
        pref = Fraction(1, multialt.double_factorial(2 * n - 1))

    def upper(i, j):
        k = shift - i - j
        return (j - i) * table[k] if k >= 0 else 0

    pf = multialt.pfaffian(multialt.SkewMatrix(size, upper))
    val = pref * _prod(q.x_conj, _one(q.exact)) ** (-n) * pf
    return AverageValue(val, "pfaffian", exact=q.exact, meta={"which": which})


def duality_check(q: RatioQuery):
    """Both sides of the beta <-> 4/beta exchange for a query with S = 0 and T >= n.

    The query's conjugated numerators are x_1..x_m (inverted), plain ones x_{m+1}..;
    v_1..v_n become the dual ensemble's inverted numerators.  Returns (left, right),
    each already multiplied by its prefactor; they must be equal.
    """
    _require_standard_power(q)
    _require(q.S == 0, "duality needs S = 0")
    q = q.as_inverse()
    n, m = q.n, q.L
    _require(q.T >= n, "duality needs at least n denominator points")
    for t in q.x_conj + q.x_plain + q.v:
        _require(abs(complex(t)) < 1, "duality needs every point inside the unit disc")
    _require(all(t != 0 for t in q.v[:n]), "the first n denominator points become inverted numerators")
    one = _one(q.exact)
    if m == 0:
        # the dual ensemble has no eigenvalues; both sides reduce to the empty average
        return (AverageValue(one, "duality_left", exact=q.exact),
                AverageValue(one, "duality_right", exact=q.exact))
    left_avg = ratio_thm1(q)
    left = b_coeff(rectangle(n, m), q.beta / 2) * _prod(q.x_conj, one) ** n * left_avg.value
    dual = dual_query(q)
    right_avg = ratio_thm1(dual)
    right = _prod(q.v[:n], one) ** m * right_avg.value
    return (AverageValue(left, "duality_left", exact=q.exact),
            AverageValue(right, "duality_right", exact=q.exact))


def dual_query(q: RatioQuery) -> RatioQuery:
    """The query on the other side of the beta <-> 4/beta exchange (needs m = L >= 1)."""
    q = q.as_inverse()
    n, m = q.n, q.L
    return RatioQuery(
        EnsembleParams(m, 4 / q.beta),
        x_conj=q.v[:n],
        x_plain=q.v[n:],
        v=q.x_conj + q.x_plain,
        conj_mode="inverse",
    )


def hypergeometric_2F1(kind: str, x: Sequence, y: Sequence, params: EnsembleParams,
                       trunc: Optional[TruncationPolicy] = None) -> AverageValue:
    """Two-alphabet 2F1 specializations of length-n alphabets.

    ``product``: 2F1^{(beta/2)}(-n, 2n/beta; -n+1-2/beta; x; y) = <prod Psi(zbar; x) Psi(z; y)>.
    ``inverse``: 2F1^{(2/beta)}(n beta/2, n beta/2; beta(n-1)/2 + 1; u; v)
               = <prod Psi(zbar; -u)^{-beta/2} Psi(z; -v)^{-beta/2}>.
    """
    n, beta = params.n, params.beta
    if len(x) != n or len(y) != n:
        raise ValueError(f"both alphabets must have exactly n = {n} points")
    trunc = trunc or TruncationPolicy()
    x, y = unify(x, y)
    if kind == "product":
        a = beta / 2
        a1, a2, b1 = Fraction(-n), 2 * n / beta, -n + 1 - 2 / beta
        finite = True
        max_w = n * n
    elif kind == "inverse":
        if any(abs(complex(t)) >= 1 for t in x + y):
            raise ValueError("inverse 2F1 needs all points inside the unit disc")
        a = 2 / beta
        a1 = a2 = n * beta / 2
        b1 = beta * (n - 1) / 2 + 1
        finite = False
        max_w = trunc.max_weight
    else:
        raise ValueError("kind must be 'product' or 'inverse'")
    exact = finite and all(is_exact(t) for t in x + y)
    if not exact:
        x, y = [complex(t) for t in x], [complex(t) for t in y]
    ex = BranchingEvaluator(x, (), a)
    ey = BranchingEvaluator(y, (), a)
    series = _Series(exact, finite, trunc)
    # [-n]_lam vanishes once lam_1 > n; P_lam of n variables once ell(lam) > n
    max_part = n if kind == "product" else max_w
    for lam in _bounded_partitions(max_part, max_w, n):
        num = gen_pochhammer(a1, lam, a) * gen_pochhammer(a2, lam, a)
        if not num:
            continue
        den = gen_pochhammer(b1, lam, a) * gen_pochhammer(Fraction(n) / a, lam, a)
        px = ex.P(lam)
        if not px:
            continue
        series.add(lam.weight(), num / den * px * ey.Q(lam))
    return series.result(f"2F1_{kind}", _one(exact), {"kind": kind})


def asymptotic_product(q: RatioQuery):
    """n -> infinity limit of the direct-form average (second expression)."""
    _require_standard_power(q)
    q = q.as_direct()
    pts = q.x_conj + q.x_plain + q.u + q.v
    if any(abs(complex(t)) >= 1 for t in pts):
        raise ValueError("asymptotic product needs all points inside the unit disc")
    return superjack.super_cauchy_product(q.x_conj, q.u, q.x_plain, q.v, q.beta / 2)


def ratio_inverse_power_one(q: RatioQuery, form: str = "deformed") -> AverageValue:
    """Denominator power 1: (x_1..x_L)^{-n} P-tilde^{(beta/2)}_{(n^L)}(x; v).

    ``form="repeated"`` uses P-hat with every v repeated p times, valid for beta = 2/p.
    """
    _require(q.S == 0, "power-one route needs S = 0")
    _require(q.power() == 1, "power-one route needs denom_power = 1")
    q = q.as_inverse()
    a = q.beta / 2
    x = q.x_conj + q.x_plain
    rect = rectangle(q.n, q.L)
    if form == "deformed":
        val = superjack.deformed_P(rect, (x, q.v), a)
    elif form == "repeated":
        inv = 1 / a
        _require(inv.denominator == 1, "repeated form needs beta = 2/p")
        vs = tuple(t for t in q.v for _ in range(int(inv)))
        val = superjack.super_P(rect, (x, vs), a)
    else:
        raise ValueError("form must be 'deformed' or 'repeated'")
    pref = _prod(q.x_conj, _one(q.exact)) ** (-q.n)
    return AverageValue(pref * val, "power_one", exact=q.exact, meta={"form": form})


def quadrature(q: RatioQuery, cfg: Optional[QuadratureConfig] = None) -> AverageValue:
    return quadrature_average(q.factors(), q.params, cfg)


# ---------------------------------------------------------------------------
# cross-checking

ROUTES = {
    "product": lambda q, o: product_average(q),
    "thm1": lambda q, o: ratio_thm1(q, o.get("trunc")),
    "thm2": lambda q, o: ratio_thm2(q, o.get("trunc")),
    "hyperdet_even": lambda q, o: ratio_hyperdet_even_beta(q, o.get("budget")),
    "hyperdet_dual": lambda q, o: ratio_hyperdet_even_dual(q, o.get("budget")),
    "pfaffian": lambda q, o: ratio_pfaffian_coe_cse(q),
    "power_one": lambda q, o: ratio_inverse_power_one(q),
    "quadrature": lambda q, o: quadrature(q, o.get("quad")),
}


def applicable_routes(q: RatioQuery) -> List[str]:
    out = []
    std = q.standard_power()
    if std and q.S == 0 and q.T == 0:
        out.append("product")
    if std:
        out += ["thm1", "thm2"]
        if q.S == 0:
            if _even_p(q.beta) is not None:
                out.append("hyperdet_even")
            if (2 / q.beta).denominator == 1:
                out.append("hyperdet_dual")
            if q.beta in (1, 4):
                out.append("pfaffian")
    if q.power() == 1 and q.S == 0:
        out.append("power_one")
    out.append("quadrature")
    return out


def evaluate(q: RatioQuery, route: str, **opts) -> AverageValue:
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; choose from {sorted(ROUTES)}")
    return ROUTES[route](q, opts)


def cross_check(q: RatioQuery, routes: Optional[Sequence[str]] = None, **opts) -> dict:
    """Evaluate several routes and compare: exact values must coincide, floats are measured."""
    routes = list(routes) if routes else applicable_routes(q)
    results = []
    errors = []
    for r in routes:
        try:
            results.append(evaluate(q, r, **opts))
        except (NotApplicable, multialt.WorkBudgetExceeded) as exc:
            errors.append({"route": r, "error": str(exc)})
    exact_vals = [res.value for res in results if res.exact]
    agree_exact = len(set(exact_vals)) <= 1
    ref = exact_vals[0] if exact_vals else (results[0].value if results else None)
    disc = 0.0
    if ref is not None:
        for res in results:
            disc = max(disc, abs(complex(res.value) - complex(ref)))
    return {
        "query": q.to_json(),
        "routes": [res.to_json() for res in results],
        "skipped": errors,
        "agree_exact": agree_exact,
        "max_float_discrepancy": disc,
        "results": results,
    }
