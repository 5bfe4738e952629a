"""High-precision variant of the ensemble quadrature (mpmath), for points near the unit circle.

Same node sets as the double-precision rule; Gauss-Jacobi nodes come from the
Golub-Welsch eigenproblem solved at the working precision.
"""

from __future__ import annotations

import mpmath as mp

from .ensemble import quadrature_method


def _jacobi01(K: int, c):
    """Gauss rule on [0, 1] for s^c, as (nodes, weights) mpf lists."""
    a, b = mp.mpf(0), mp.mpf(c)
    # three-term recurrence of Jacobi polynomials for (1-x)^a (1+x)^b on [-1, 1]
    diag, off = [], []
    for k in range(K):
        s = 2 * k + a + b
        if k == 0:
            diag.append((b - a) / (a + b + 2))
        else:
            diag.append((b * b - a * a) / (s * (s + 2)))
        if k >= 1:
            num = 4 * k * (k + a) * (k + b) * (k + a + b)
            den = s * s * (s + 1) * (s - 1)
            off.append(mp.sqrt(num / den))
    J = mp.matrix(K, K)
    for i in range(K):
        J[i, i] = diag[i]
        if i + 1 < K:
            J[i, i + 1] = J[i + 1, i] = off[i]
    E, Q = mp.eigsy(J)
    mu0 = 2 ** (a + b + 1) * mp.gamma(a + 1) * mp.gamma(b + 1) / mp.gamma(a + b + 2)
    nodes = [(1 + E[i]) / 2 for i in range(K)]
    weights = [mu0 * Q[0, i] ** 2 / 2 ** (b + 1) for i in range(K)]
    return nodes, weights


def _sinc_half(x):
    return mp.mpf(1) if x == 0 else 2 * mp.sin(x / 2) / x


def _shape_nodes(n, K, beta):
    if n == 2:
        s, ws = _jacobi01(K, beta)
        return [((mp.pi * si,), wi * mp.pi ** (beta + 1) * _sinc_half(mp.pi * si) ** beta) for si, wi in zip(s, ws)], 2
    ts, wts = _jacobi01(K, beta)
    wn, ww = _jacobi01(K, 3 * beta + 1)
    out = []
    for half in (0, 1):
        for t0, wt in zip(ts, wts):
            t = t0 / 2 if half == 0 else 1 - t0 / 2
            wt = wt / 2 ** (beta + 1)
            rmax = 2 * mp.pi / (1 + max(t, 1 - t))
            other = (1 - t) ** beta if half == 0 else t**beta
            for w0, wwi in zip(wn, ww):
                rho = rmax * w0
                g2, g3 = rho * t, rho * (1 - t)
                g1 = 2 * mp.pi - rho
                smooth = (_sinc_half(rho) * _sinc_half(g2) * _sinc_half(g3)) ** beta
                out.append(((g1, g1 + g2), wt * wwi * rmax ** (3 * beta + 2) * other * smooth))
    return out, 6


def _integrand(factors, thetas):
    z = [mp.expjpi(2 * t / (2 * mp.pi)) for t in thetas]
    total = mp.mpc(1)
    for f in factors:
        x = mp.mpc(complex(f.point)) if not hasattr(f.point, "numerator") else mp.mpf(f.point.numerator) / f.point.denominator
        k = f.integer_power()
        acc = mp.mpc(1)
        logs = mp.mpc(0)
        for zj in z:
            w = mp.conj(zj) if f.conjugated else zj
            if k is not None:
                acc *= (1 + x * w) ** k
            else:
                logs += mp.log(1 + x * w)
        if k is None:
            pw = mp.mpf(f.power.numerator) / f.power.denominator if hasattr(f.power, "numerator") else mp.mpf(f.power)
            acc = mp.exp(pw * logs)
        total *= acc
    return total


def _rule(factors, params, M, K):
    n = params.n
    beta = mp.mpf(params.beta.numerator) / params.beta.denominator
    num = mp.mpc(0)
    norm = mp.mpf(0)
    thetas1 = [2 * mp.pi * k / M for k in range(M)]
    if quadrature_method(params) == "sector":
        shape, pref = _shape_nodes(n, K, beta)
        scale = mp.mpf(pref) / (M * (2 * mp.pi) ** (n - 1))
        for th in thetas1:
            for rel, w in shape:
                pts = (th,) + tuple(th + r for r in rel)
                wt = w * scale
                num += wt * _integrand(factors, pts)
                norm += wt
        return num, norm
    import itertools

    for pts in itertools.product(thetas1, repeat=n):
        z = [mp.expjpi(2 * t / (2 * mp.pi)) for t in pts]
        wt = mp.mpf(1) / mp.mpf(M) ** n
        for i in range(n):
            for j in range(i + 1, n):
                wt *= abs(z[i] - z[j]) ** beta
        num += wt * _integrand(factors, pts)
        norm += wt
    return num, norm


def hp_average(factors, params, cfg):
    with mp.workprec(cfg.precision_bits):
        M, K = cfg.points_per_dim, cfg.jacobi_points()
        num, norm = _rule(factors, params, M, K)
        value = num / norm
        if factors:
            num2, norm2 = _rule(factors, params, max(4, M // 2), max(4, K // 2))
            err = abs(value - num2 / norm2)
        else:
            err = mp.mpf(0)
        return complex(value), float(norm), float(err)
