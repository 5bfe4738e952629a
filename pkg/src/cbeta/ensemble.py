"""The circular beta-ensemble at desk scale: weight, normalization and a quadrature oracle.

The quadrature integrates over the torus with the eigenvalue weight included, then
divides by the same rule applied to the weight alone.

* even beta: the weight is a trigonometric polynomial, so the M^n product trapezoid
  rule converges geometrically;
* n = 1: plain trapezoid;
* other beta, n = 2 or 3: one point is swept by the trapezoid rule and the gaps
  to the others use Gauss-Jacobi rules that absorb the |z_i - z_j|^beta cusps
  (the integrand is split by which gap is largest so every cusp sits at an endpoint);
* anything else falls back to the product trapezoid, whose slower convergence
  shows up in ``err_est``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import roots_jacobi

from .partition import to_fraction
from .scalars import scalar_to_json


@dataclass(frozen=True)
class EnsembleParams:
    n: int
    beta: Fraction

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        b = to_fraction(self.beta)
        if b <= 0:
            raise ValueError(f"beta must be positive, got {b}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "beta", b)

    def alpha(self) -> Fraction:
        return 2 / self.beta

    def to_json(self) -> dict:
        return {"n": self.n, "beta": scalar_to_json(self.beta)}


def dyson_constant(params: EnsembleParams):
    """Gamma(beta n/2 + 1) / Gamma(beta/2 + 1)^n; exact when beta/2 is an integer or n = 1."""
    n, beta = params.n, params.beta
    if n == 1:
        return Fraction(1)
    half = beta / 2
    if half.denominator == 1:
        k = int(half)
        return Fraction(math.factorial(k * n), math.factorial(k) ** n)
    b = float(beta)
    return math.exp(math.lgamma(b * n / 2 + 1) - n * math.lgamma(b / 2 + 1))


def weight(z: Sequence[complex], beta) -> float:
    """prod_{i<j} |z_i - z_j|^beta."""
    b = float(to_fraction(beta)) if not isinstance(beta, float) else beta
    out = 1.0
    z = list(z)
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            out *= abs(z[i] - z[j]) ** b
    return out


@dataclass(frozen=True)
class PsiFactor:
    """prod_j (1 + point * w_j)^power with w = conj(z) when ``conjugated``."""

    point: complex
    conjugated: bool = False
    power: Fraction = Fraction(1)

    def __post_init__(self):
        p = self.power
        if not isinstance(p, float):
            p = to_fraction(p)
        object.__setattr__(self, "power", p)
        if not self.positive_integer_power() and abs(complex(self.point)) >= 1:
            raise ValueError(
                f"factor with power {p} needs |point| < 1 (got {self.point}); it would hit a pole or branch cut"
            )

    def positive_integer_power(self) -> bool:
        p = self.power
        if isinstance(p, float):
            return p.is_integer() and p > 0
        return p.denominator == 1 and p > 0

    def integer_power(self) -> Optional[int]:
        p = self.power
        if isinstance(p, float):
            return int(p) if p.is_integer() else None
        return int(p) if p.denominator == 1 else None


@dataclass(frozen=True)
class QuadratureConfig:
    points_per_dim: int = 64
    precision_bits: int = 53
    gauss_points: Optional[int] = None

    def __post_init__(self):
        if self.points_per_dim < 4:
            raise ValueError("points_per_dim must be at least 4")
        if self.precision_bits < 53:
            raise ValueError("precision below double is not supported")

    def jacobi_points(self) -> int:
        return self.gauss_points or max(8, self.points_per_dim // 2)


@dataclass
class AverageValue:
    """An ensemble average from one route; exact values carry no truncation report."""

    value: object
    route: str
    exact: bool = False
    truncation_report: List = field(default_factory=list)
    err_est: Optional[float] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.exact and self.truncation_report:
            raise ValueError("exact values carry no truncation report")

    def complex(self) -> complex:
        return complex(self.value)

    def to_json(self) -> dict:
        out = {"route": self.route, "value": scalar_to_json(self.value), "exact": self.exact}
        if self.err_est is not None:
            out["err_est"] = self.err_est
        if self.truncation_report:
            out["truncation_report"] = [
                {"degree": d, "partial_sum": scalar_to_json(s)} for d, s in self.truncation_report
            ]
        out.update(self.meta)
        return out


# ---------------------------------------------------------------------------
# node sets: angles (P, n) and weights (P,) such that sum w f(angles) = int f Delta dtheta/(2pi)^n


def _trapezoid_nodes(n: int, M: int, beta: float):
    grid = 2 * np.pi * np.arange(M) / M
    mesh = np.stack(np.meshgrid(*([grid] * n), indexing="ij"), axis=-1).reshape(-1, n)
    w = np.full(len(mesh), float(M) ** -n)
    z = np.exp(1j * mesh)
    for i in range(n):
        for j in range(i + 1, n):
            w = w * np.abs(z[:, i] - z[:, j]) ** beta
    return mesh, w


def _jacobi01(K: int, c: float):
    """Gauss rule on [0, 1] for the weight s^c."""
    x, w = roots_jacobi(K, 0.0, c)
    return (1 + x) / 2, w / 2 ** (c + 1)


def _sinc_half(x):
    # 2 sin(x/2)/x, equal to 1 at 0
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    nz = x != 0
    out[nz] = 2 * np.sin(x[nz] / 2) / x[nz]
    return out


def _sector_nodes(n: int, M: int, K: int, beta: float):
    theta1 = 2 * np.pi * np.arange(M) / M
    if n == 2:
        # second gap rho in [0, pi]; weight (2 sin(rho/2))^beta = rho^beta S(rho)^beta
        s, ws = _jacobi01(K, beta)
        rho = np.pi * s
        shape_angles = rho[:, None]
        shape_w = ws * np.pi ** (beta + 1) * _sinc_half(rho) ** beta
        pref = 2.0  # n (largest-gap sectors) * (n-1)! orderings
    elif n == 3:
        ts, wts = _jacobi01(K, beta)
        ws_, www = _jacobi01(K, 3 * beta + 1)
        angles, weights = [], []
        for half in (0, 1):
            # t in [0, 1/2] with t^beta, or t in [1/2, 1] with (1-t)^beta
            t = ts / 2 if half == 0 else 1 - ts / 2
            wt = wts / 2 ** (beta + 1)
            tt, ww = np.meshgrid(t, ws_, indexing="ij")
            wtt, www_ = np.meshgrid(wt, www, indexing="ij")
            rmax = 2 * np.pi / (1 + np.maximum(tt, 1 - tt))
            rho = rmax * ww
            g2, g3 = rho * tt, rho * (1 - tt)
            g1 = 2 * np.pi - rho
            # the t^beta or (1-t)^beta factor is in the Jacobi weight; the other one stays here
            other = (1 - tt) ** beta if half == 0 else tt ** beta
            smooth = (_sinc_half(rho) * _sinc_half(g2) * _sinc_half(g3)) ** beta
            wgt = wtt * www_ * rmax ** (3 * beta + 2) * other * smooth
            angles.append(np.stack([g1, g1 + g2], axis=-1).reshape(-1, 2))
            weights.append(wgt.reshape(-1))
        shape_angles = np.concatenate(angles)
        shape_w = np.concatenate(weights)
        pref = 6.0  # 3 sectors * 2! orderings
    else:
        raise ValueError("sector rule covers n = 2, 3")
    P = len(shape_w)
    ang = np.empty((M * P, n))
    ang[:, 0] = np.repeat(theta1, P)
    ang[:, 1:] = np.repeat(theta1, P)[:, None] + np.tile(shape_angles, (M, 1))
    w = np.tile(shape_w, M) * pref / (M * (2 * np.pi) ** (n - 1))
    return ang, w


def quadrature_method(params: EnsembleParams) -> str:
    if params.n == 1:
        return "trapezoid"
    if (params.beta / 2).denominator == 1:
        return "trapezoid"
    if params.n in (2, 3):
        return "sector"
    return "trapezoid"


def _nodes(params: EnsembleParams, M: int, K: int):
    beta = float(params.beta)
    if quadrature_method(params) == "sector":
        return _sector_nodes(params.n, M, K, beta)
    return _trapezoid_nodes(params.n, M, beta)


def _integrand(factors: Sequence[PsiFactor], angles: np.ndarray) -> np.ndarray:
    z = np.exp(1j * angles)
    total = np.ones(len(angles), dtype=complex)
    for f in factors:
        w = np.conj(z) if f.conjugated else z
        base = 1 + complex(f.point) * w
        k = f.integer_power()
        if k is not None:
            total *= np.prod(base, axis=1) ** k
        else:
            total *= np.exp(float(f.power) * np.log(base).sum(axis=1))
    return total


def _rule(factors, params, M, K):
    ang, w = _nodes(params, M, K)
    # chunk to keep memory bounded for n = 3, M = 128
    num = 0j
    for start in range(0, len(w), 1 << 18):
        sl = slice(start, start + (1 << 18))
        num += np.dot(w[sl], _integrand(factors, ang[sl]))
    return num, float(w.sum())


def quadrature_average(factors: Sequence[PsiFactor], params: EnsembleParams,
                       cfg: Optional[QuadratureConfig] = None) -> AverageValue:
    """<prod factors> over the ensemble, normalized by the same rule applied to the weight."""
    cfg = cfg or QuadratureConfig()
    factors = list(factors)
    M, K = cfg.points_per_dim, cfg.jacobi_points()
    if cfg.precision_bits > 53:
        from ._hiprec import hp_average

        value, norm, err = hp_average(factors, params, cfg)
    else:
        num, norm = _rule(factors, params, M, K)
        value = num / norm
        if factors:
            num2, norm2 = _rule(factors, params, max(4, M // 2), max(4, K // 2))
            err = abs(value - num2 / norm2)
        else:
            err = 0.0
    meta = {
        "M": M,
        "n": params.n,
        "beta": scalar_to_json(params.beta),
        "normalization": norm,
        "method": quadrature_method(params),
    }
    return AverageValue(complex(value), "quadrature", exact=False, err_est=float(err), meta=meta)


def unnormalized_integral(params: EnsembleParams, cfg: Optional[QuadratureConfig] = None) -> float:
    """int prod|z_i - z_j|^beta dtheta/(2pi)^n on the same grid as ``quadrature_average``."""
    cfg = cfg or QuadratureConfig()
    return _rule([], params, cfg.points_per_dim, cfg.jacobi_points())[1]
