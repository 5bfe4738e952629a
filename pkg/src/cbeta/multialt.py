"""Multi-alternating sums: hyperdeterminants, Pfaffians and the rectangular Jack closed forms."""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from . import _accel
from .partition import Partition, is_rectangular
from .superjack import BiPointSet, _pts, g_hat_table

DEFAULT_WORK_BUDGET = 10**7


class WorkBudgetExceeded(RuntimeError):
    pass


def work_budget() -> int:
    return int(float(os.environ.get("CBETA_WORK_BUDGET", DEFAULT_WORK_BUDGET)))


def hyperdet_work(order: int, dim: int) -> int:
    """Signed products enumerated with the first permutation fixed: N!^(2p-1)."""
    return math.factorial(dim) ** (order - 1)


def check_budget(order: int, dim: int, budget: Optional[int] = None) -> int:
    budget = work_budget() if budget is None else budget
    work = hyperdet_work(order, dim)
    if work > budget:
        raise WorkBudgetExceeded(
            f"hyperdeterminant of order {order}, dim {dim} needs {work} products (budget {budget})"
        )
    return work


@dataclass
class HyperArray:
    """An order-2p array on [1..N]^{2p}.

    ``entry`` takes the 2p indices (1-based).  Arrays whose entries depend only on
    offset + i_1 + ... + i_p - i_{p+1} - ... - i_{2p} should be built with
    ``HyperArray.shifted`` so the counting kernel can be used.
    """

    order: int
    dim: int
    entry: Callable
    offset: Optional[int] = None
    table: Optional[Sequence] = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.order < 2 or self.order % 2:
            raise ValueError(f"hyperarray order must be even and >= 2, got {self.order}")
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")

    @property
    def p(self) -> int:
        return self.order // 2

    def __call__(self, *idx):
        hit = self._cache.get(idx)
        if hit is None:
            hit = self.entry(*idx)
            self._cache[idx] = hit
        return hit

    @classmethod
    def from_array(cls, arr) -> "HyperArray":
        arr = np.asarray(arr, dtype=object)
        if len(set(arr.shape)) > 1:
            raise ValueError("hyperarray must have equal side lengths")
        return cls(arr.ndim, arr.shape[0] if arr.ndim else 0, lambda *i: arr[tuple(k - 1 for k in i)])

    @classmethod
    def shifted(cls, p: int, dim: int, offset: int, table: Sequence) -> "HyperArray":
        """Entries table[offset + i_1+..+i_p - i_{p+1}-..-i_{2p}], zero for negative subscripts."""
        table = list(table)

        def entry(*idx):
            k = offset + sum(idx[:p]) - sum(idx[p:])
            if k < 0:
                return 0
            return table[k]

        return cls(2 * p, dim, entry, offset=offset, table=table)


def hyperdet(A: HyperArray, budget: Optional[int] = None, backend: str = "auto"):
    """Det^(2p)(A) with the first permutation fixed to the identity.

    ``backend``: "python" (generic exact DFS with zero pruning), "numba" or "numpy"
    (shift-counting kernels, only for arrays built by ``HyperArray.shifted``), or "auto".
    """
    N = A.dim
    if N == 0:
        return Fraction(1)
    check_budget(A.order, N, budget)
    if backend == "auto":
        if A.table is None:
            backend = "python"
        elif _accel.use_numba() and hyperdet_work(A.order, N) > 20_000:
            backend = "numba"
        else:
            backend = "numpy" if A.table is not None and hyperdet_work(A.order, N) > 2_000 else "python"
    if backend == "python":
        return _hyperdet_dfs(A)
    if A.table is None:
        raise ValueError(f"backend {backend!r} needs a shift-structured array")
    keys, counts, base = shift_multiset_counts(A.p, N, A.offset, backend=backend)
    return _combine(keys, counts, base, N, A.table)


def _hyperdet_dfs(A: HyperArray):
    N = A.dim
    slots = A.order - 1
    total = Fraction(0)

    def rec(i, used, sign, acc):
        nonlocal total
        if i == N:
            total = total + sign * acc
            return
        free = [[v for v in range(N) if not (used[s] >> v) & 1] for s in range(slots)]
        for choice in itertools.product(*free):
            val = A(i + 1, *(c + 1 for c in choice))
            if not val:
                continue
            s = sign
            new_used = list(used)
            for k, c in enumerate(choice):
                # inversions: already-used values larger than c
                if bin(used[k] >> (c + 1)).count("1") % 2:
                    s = -s
                new_used[k] = used[k] | (1 << c)
            rec(i + 1, new_used, s, acc * val)

    rec(0, [0] * slots, 1, Fraction(1))
    return total


@lru_cache(maxsize=16)
def _perm_table(N: int):
    perms = np.array(list(itertools.permutations(range(1, N + 1))), dtype=np.int64).reshape(-1, N)
    signs = np.empty(len(perms), dtype=np.int64)
    for r, perm in enumerate(perms):
        inv = sum(1 for a in range(N) for b in range(a + 1, N) if perm[a] > perm[b])
        signs[r] = -1 if inv % 2 else 1
    return perms, signs


def _kernel_numpy(perms, signs, p, N, offset, base, chunk=1 << 16):
    F = len(perms)
    slots = 2 * p - 1
    total = F**slots
    ident = np.arange(1, N + 1, dtype=np.int64)
    pos = np.array([1] * (p - 1) + [-1] * p, dtype=np.int64)
    powers = base ** np.arange(N, dtype=np.int64)
    acc: dict = {}
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        shifts = np.broadcast_to(ident + offset, (len(idx), N)).copy()
        sign = np.ones(len(idx), dtype=np.int64)
        rem = idx
        for s in range(slots):
            rem, digit = np.divmod(rem, F)
            shifts += pos[s] * perms[digit]
            sign *= signs[digit]
        ok = (shifts >= 0).all(axis=1)
        if not ok.any():
            continue
        shifts = np.sort(shifts[ok], axis=1)
        keys = shifts @ powers
        uniq, inv = np.unique(keys, return_inverse=True)
        sums = np.bincount(inv, weights=sign[ok]).astype(np.int64)
        for k, c in zip(uniq.tolist(), sums.tolist()):
            acc[k] = acc.get(k, 0) + c
    keys = np.array(list(acc.keys()), dtype=np.int64)
    counts = np.array(list(acc.values()), dtype=np.int64)
    return keys, counts


DENSE_KEY_LIMIT = 1 << 24


@lru_cache(maxsize=1)
def _numba_kernel():
    import numba
    from numba import types
    from numba.typed import Dict

    @numba.njit(cache=False)
    def kernel(perms, signs, p, N, offset, base, dense):
        F = perms.shape[0]
        slots = 2 * p - 1
        # level s adds (s < p-1) or subtracts perms[digit[s]]; partial[s+1] holds the running shifts
        partial = np.empty((slots + 1, N), dtype=np.int64)
        for i in range(N):
            partial[0, i] = offset + i + 1
        psign = np.ones(slots + 1, dtype=np.int64)
        # best case after level s: plus slots add at most N, minus slots remove at least 1
        slack = np.zeros(slots + 1, dtype=np.int64)
        for s in range(slots + 1):
            for t in range(s, slots):
                slack[s] += N if t < p - 1 else -1
        digit = np.zeros(slots, dtype=np.int64)
        acc = Dict.empty(key_type=types.int64, value_type=types.int64)
        counts_dense = np.zeros(base**N if dense else 1, dtype=np.int64)
        buf = np.empty(N, dtype=np.int64)
        s = 0
        while s >= 0:
            if digit[s] == F:
                digit[s] = 0
                s -= 1
                if s >= 0:
                    digit[s] += 1
                continue
            d = digit[s]
            ok = True
            for i in range(N):
                v = partial[s, i] + (perms[d, i] if s < p - 1 else -perms[d, i])
                partial[s + 1, i] = v
                if v + slack[s + 1] < 0:
                    ok = False
            if not ok:
                digit[s] += 1
                continue
            psign[s + 1] = psign[s] * signs[d]
            if s < slots - 1:
                s += 1
                continue
            # full assignment: sort shifts and record the signed count
            for i in range(N):
                v = partial[slots, i]
                j = i
                while j > 0 and buf[j - 1] > v:
                    buf[j] = buf[j - 1]
                    j -= 1
                buf[j] = v
            key = 0
            mult = 1
            for i in range(N):
                key += buf[i] * mult
                mult *= base
            if dense:
                counts_dense[key] += psign[slots]
            elif key in acc:
                acc[key] += psign[slots]
            else:
                acc[key] = psign[slots]
            digit[s] += 1
        if dense:
            nz = np.nonzero(counts_dense)[0]
            return nz.astype(np.int64), counts_dense[nz]
        keys = np.empty(len(acc), dtype=np.int64)
        counts = np.empty(len(acc), dtype=np.int64)
        j = 0
        for k, c in acc.items():
            keys[j] = k
            counts[j] = c
            j += 1
        return keys, counts

    return kernel


def shift_multiset_counts(p: int, N: int, offset: int, backend: str = "auto"):
    """Signed counts of each sorted shift vector (offset + i + sum +/- sigma_j(i)).

    Returns ``(keys, counts, base)``: keys encode sorted shift vectors in base ``base``.
    Vectors with a negative shift are dropped (their product vanishes).
    """
    perms, signs = _perm_table(N)
    base = offset + p * N + 1
    if base <= 1 or N * math.log2(base) > 62:
        raise OverflowError("shift vectors do not fit the int64 encoding")
    if backend == "auto":
        backend = "numba" if _accel.use_numba() else "numpy"
    if backend == "numba":
        dense = base**N <= DENSE_KEY_LIMIT
        keys, counts = _numba_kernel()(perms, signs, p, N, offset, base, dense)
    elif backend == "numpy":
        keys, counts = _kernel_numpy(perms, signs, p, N, offset, base)
    else:
        raise ValueError(f"unknown kernel backend {backend!r}")
    keep = counts != 0
    return keys[keep], counts[keep], base


def _combine(keys, counts, base, N, table):
    total = Fraction(0)
    for key, c in zip(keys.tolist(), counts.tolist()):
        if not c:
            continue
        term = c
        k = key
        for _ in range(N):
            k, s = divmod(k, base)
            term = term * table[s]
            if not term:
                break
        total = total + term
    return total


@dataclass
class SkewMatrix:
    """Antisymmetric matrix given by its strictly upper entries ``upper(i, j)`` (1-based, i < j)."""

    dim: int
    upper: Callable

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")

    def __call__(self, i: int, j: int):
        if i == j:
            return 0
        if i < j:
            return self.upper(i, j)
        return -self.upper(j, i)

    @classmethod
    def from_matrix(cls, M) -> "SkewMatrix":
        M = [list(r) for r in M]
        return cls(len(M), lambda i, j: M[i - 1][j - 1])

    def dense(self) -> list:
        return [[self(i, j) for j in range(1, self.dim + 1)] for i in range(1, self.dim + 1)]


def pfaffian(B):
    """Pfaffian by expansion along the first remaining row, memoized on the index set."""
    if not isinstance(B, SkewMatrix):
        B = SkewMatrix.from_matrix(B)
    n = B.dim
    if n % 2:
        raise ValueError(f"Pfaffian needs an even dimension, got {n}")
    if n == 0:
        return Fraction(1)
    entries = {(i, j): B.upper(i + 1, j + 1) for i in range(n) for j in range(i + 1, n)}
    memo: dict = {}

    def pf(mask: int):
        if mask == 0:
            return Fraction(1)
        hit = memo.get(mask)
        if hit is not None:
            return hit
        idx = [k for k in range(n) if (mask >> k) & 1]
        i = idx[0]
        total = Fraction(0)
        for pos, j in enumerate(idx[1:]):
            b = entries[(i, j)]
            if not b:
                continue
            sub = pf(mask & ~(1 << i) & ~(1 << j))
            term = b * sub
            total = total - term if pos % 2 else total + term
        memo[mask] = total
        return total

    return pf((1 << n) - 1)


def rect_jack_hyperdet(a: int, b: int, p: int, pts, budget: Optional[int] = None, backend: str = "auto"):
    """Q-hat_{(a^b)}^{(1/p)}(x; y) as (b!(p!)^b/(pb)!) Det^(2p)(g-hat_{a + i_1+..+i_p - i_{p+1}-..}).

    The prefactor is the inverse of the number of ways the first permutation can be fixed.
    """
    if a < 1 or b < 1 or p < 1:
        raise ValueError("a, b and p must be positive")
    pts = _pts(pts)
    alpha = Fraction(1, p)
    table = g_hat_table(a + p * (b - 1), pts, alpha)
    A = HyperArray.shifted(p, b, a, table)
    det = hyperdet(A, budget=budget, backend=backend)
    pref = Fraction(math.factorial(b) * math.factorial(p) ** b, math.factorial(p * b))
    return pref * det


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def pfaffian_gamma(lam, n: int) -> list:
    lam = Partition(lam)
    padded = lam.padded(n)
    return list(reversed(padded)) + list(padded)


def rect_jack_pfaffian(lam, n: int, pts):
    """Q-hat_lam^{(1/2)} for rectangular lam as (1/(2n-1)!!) Pf((j-i) g-hat_{gamma_j + 2n + 1 - i - j})."""
    lam = Partition(lam)
    if not is_rectangular(lam):
        raise ValueError(f"Pfaffian formula needs a rectangular diagram, got {tuple(lam)}")
    if n < len(lam):
        raise ValueError(f"padding n={n} is shorter than the diagram length {len(lam)}")
    if n == 0:
        return Fraction(1)
    pts = _pts(pts)
    gamma = pfaffian_gamma(lam, n)
    kmax = max(gamma) + 2 * n
    table = g_hat_table(kmax, pts, Fraction(1, 2))

    def upper(i, j):
        k = gamma[j - 1] + 2 * n + 1 - i - j
        return (j - i) * table[k] if k >= 0 else 0

    return pfaffian(SkewMatrix(2 * n, upper)) / double_factorial(2 * n - 1)
