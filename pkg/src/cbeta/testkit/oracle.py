"""A second, separately written quadrature for ratio averages (n <= 3).

Differences from ``cbeta.ensemble.quadrature_average``: grids are offset by half a
step, every rule averages over the first angle inside the integrand, and for
non-even beta the gaps between eigenvalues go through adaptive QUADPACK with
algebraic end-point weights instead of fixed Gauss-Jacobi nodes.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy import integrate

from ..ensemble import AverageValue


def _factor_list(q):
    """(point, conjugated, power) triples of the query's integrand."""
    d = float(q.power())
    out = []
    for x in q.x_conj:
        pt = 1 / complex(x) if q.conj_mode == "inverse" else complex(x)
        out.append((pt, True, 1.0))
    out += [(complex(x), False, 1.0) for x in q.x_plain]
    out += [(-complex(u), True, -d) for u in q.u]
    out += [(-complex(v), False, -d) for v in q.v]
    return out


def _integrand(factors, angles):
    """Integrand at angles of shape (n, P); returns shape (P,)."""
    z = np.exp(1j * np.asarray(angles))
    logs = np.zeros(z.shape[1], dtype=complex)
    prod = np.ones(z.shape[1], dtype=complex)
    for pt, conj, power in factors:
        w = z.conj() if conj else z
        base = 1 + pt * w
        if float(power).is_integer():
            prod *= np.prod(base, axis=0) ** int(power)
        else:
            logs += power * np.log(base).sum(axis=0)
    return prod * np.exp(logs)


def _offset_grid(M):
    return 2 * np.pi * (np.arange(M) + 0.5) / M


def _sinc_half(x):
    return 1.0 if x == 0 else 2 * math.sin(x / 2) / x


def _cquad(f, a, b, wvar, **kw):
    re = integrate.quad(lambda t: f(t).real, a, b, weight="alg", wvar=wvar, limit=200, **kw)[0]
    im = integrate.quad(lambda t: f(t).imag, a, b, weight="alg", wvar=wvar, limit=200, **kw)[0]
    return complex(re, im)


def _torus_sum(factors, n, beta, M):
    grid = _offset_grid(M)
    mesh = np.meshgrid(*([grid] * n), indexing="ij")
    ang = np.stack([m.ravel() for m in mesh])
    z = np.exp(1j * ang)
    w = np.ones(ang.shape[1])
    for i in range(n):
        for j in range(i + 1, n):
            w *= np.abs(z[i] - z[j]) ** beta
    f = _integrand(factors, ang)
    return complex(np.sum(w * f)) / M**n, float(np.sum(w)) / M**n


def _gap_sum(factors, n, beta, M, tol):
    th = _offset_grid(M)

    def mean_over_first(rel):
        ang = np.vstack([th] + [th + r for r in rel])
        return _integrand(factors, ang).mean()

    def h(g):
        # 2 sin(g/2) / (g (2pi - g)), smooth and positive on [0, 2pi]
        if g == 0 or g == 2 * np.pi:
            return 1 / (2 * np.pi)
        return 2 * math.sin(g / 2) / (g * (2 * np.pi - g))

    if n == 2:
        def f(g):
            return h(g) ** beta * mean_over_first((g,))

        num = _cquad(f, 0, 2 * np.pi, (beta, beta), epsabs=tol, epsrel=tol)
        den = _cquad(lambda g: complex(h(g) ** beta), 0, 2 * np.pi, (beta, beta), epsabs=tol, epsrel=tol)
        return num, den.real
    # n = 3: z2 = z1 e^{i g}, z3 = z2 e^{i b s} with b = 2pi - g, counterclockwise order

    def outer(g, fn):
        b = 2 * np.pi - g

        def inner(s):
            return (_sinc_half(b * s) * _sinc_half(b * (1 - s))) ** beta * fn(g, b * s)

        return h(g) ** beta * _cquad(inner, 0, 1, (beta, beta), epsabs=tol, epsrel=tol)

    num = _cquad(lambda g: outer(g, lambda g_, t: mean_over_first((g_, g_ + t))),
                 0, 2 * np.pi, (beta, 3 * beta + 1), epsabs=tol, epsrel=tol)
    den = _cquad(lambda g: outer(g, lambda g_, t: 1.0 + 0j), 0, 2 * np.pi, (beta, 3 * beta + 1),
                 epsabs=tol, epsrel=tol)
    return num, den.real


def dyson_gamma(n, beta):
    """Gamma(1 + n beta/2) / Gamma(1 + beta/2)^n in floating point."""
    b = float(beta)
    return math.exp(math.lgamma(1 + n * b / 2) - n * math.lgamma(1 + b / 2))


def oracle_average(q, grid=48, tol=1e-12):
    """Independent estimate of the ratio average for n <= 3.

    ``grid`` is the number of offset trapezoid points per angle; for non-even beta
    and n >= 2 the gaps are integrated adaptively to ``tol``.
    """
    n = q.n
    beta = Fraction(q.beta)
    if n > 3:
        raise ValueError("the quadrature oracle handles n <= 3")
    factors = _factor_list(q)
    even = (beta / 2).denominator == 1
    if n == 1 or even:
        num, den = _torus_sum(factors, n, float(beta), grid)
        method = "offset-trapezoid"
    else:
        num, den = _gap_sum(factors, n, float(beta), grid, tol)
        method = "offset-trapezoid+quadpack"
    return AverageValue(num / den, "oracle", exact=False,
                        meta={"grid": grid, "method": method, "normalization": den})
