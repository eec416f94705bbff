"""Seeded generators for the synthetic benchmarks and the special functions they need.

Every sampler is an exact inverse-CDF transform of uniforms drawn from a
PCG64 stream, with one spawned substream per group and variable, so a seed
reproduces the same data on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import erfc

from .dataset import BINARY, CONTINUOUS, DataMatrix, VariableSchema

# Rational approximation coefficients for the normal quantile (Acklam).
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02, 1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02, 6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00, -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00, 3.754408661907416e00)
_P_LOW = 0.02425


def _poly(coeffs, x):
    out = np.zeros_like(x)
    for c in coeffs:
        out = out * x + c
    return out


def t2_cdf(x):
    """CDF of Student's t with 2 degrees of freedom."""
    x = np.asarray(x, dtype=float)
    out = 0.5 + x / (2.0 * np.sqrt(2.0 + x * x))
    return float(out) if out.ndim == 0 else out


def t2_lower_tail(x):
    """``t2_cdf(-|x|)`` computed without cancellation."""
    x = np.abs(np.asarray(x, dtype=float))
    s = np.sqrt(2.0 + x * x)
    out = 1.0 / (s * (s + x))
    return float(out) if out.ndim == 0 else out


def inv_norm_cdf(u):
    """Standard normal quantile, accurate to about 1e-15 in the body."""
    u_arr = np.asarray(u, dtype=float)
    if np.any(~((u_arr > 0) & (u_arr < 1))):
        raise ValueError("inv_norm_cdf needs 0 < u < 1")
    u = np.atleast_1d(u_arr)
    x = np.empty_like(u)
    lo = u < _P_LOW
    hi = u > 1 - _P_LOW
    mid = ~(lo | hi)
    if lo.any():
        q = np.sqrt(-2 * np.log(u[lo]))
        x[lo] = _poly(_C, q) / (_poly(_D, q) * q + 1)
    if hi.any():
        q = np.sqrt(-2 * np.log1p(-u[hi]))
        x[hi] = -_poly(_C, q) / (_poly(_D, q) * q + 1)
    if mid.any():
        q = u[mid] - 0.5
        r = q * q
        x[mid] = _poly(_A, r) * q / (_poly(_B, r) * r + 1)
    # One Newton step against the exact normal CDF; above the median the
    # residual is taken on the upper tail, where 1 - u is exact.
    err = np.where(u > 0.5, (1.0 - u) - 0.5 * erfc(x / math.sqrt(2.0)), 0.5 * erfc(-x / math.sqrt(2.0)) - u)
    x = x - err * math.sqrt(2 * math.pi) * np.exp(0.5 * x * x)
    return float(x[0]) if u_arr.ndim == 0 else x


def _streams(seed: int, count: int):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def gen_s1(seed: int = 0, size: int = 100) -> DataMatrix:
    """Two classes of (binary, Cauchy) pairs.

    Class 1 has P(binary = 0) = 0.8 and Cauchy location 0; class 2 has
    P(binary = 0) = 0.2 and location 3. Both Cauchy scales are 1.
    """
    groups = ((0.8, 0.0), (0.2, 3.0))
    rngs = _streams(seed, 2 * len(groups))
    cols, labels = [], []
    for g, (p_zero, loc) in enumerate(groups):
        u_bin = rngs[2 * g].random(size)
        u_cau = rngs[2 * g + 1].random(size)
        binary = (u_bin >= p_zero).astype(float)
        cauchy = loc + np.tan(np.pi * (u_cau - 0.5))
        cols.append(np.column_stack([binary, cauchy]))
        labels += [g + 1] * size
    return DataMatrix(
        np.vstack(cols), VariableSchema((BINARY, CONTINUOUS)), np.array(labels), ("binary", "cauchy")
    )


S3_SIZES = (20, 15, 10)
S3_MEANS = (0.0, -3.0, 3.0)
S3_RHO = 0.15


def s3_uniforms(rng: np.random.Generator, n: int, p: int = 6, rho: float = S3_RHO) -> Tuple[np.ndarray, np.ndarray]:
    """Draw *n* points of the t2 copula.

    Returns the t2 variates and their lower-tail probabilities
    ``min(F, 1 - F)``; callers recover ``F`` from the sign of the variate.
    """
    corr = np.full((p, p), rho)
    np.fill_diagonal(corr, 1.0)
    L = np.linalg.cholesky(corr)
    z = inv_norm_cdf(rng.random((n, p))) @ L.T
    w = -2.0 * np.log(rng.random(n))
    t = z / np.sqrt(w / 2.0)[:, None]
    return t, t2_lower_tail(t)


def gen_s3(seed: int = 0, sizes=S3_SIZES, means=S3_MEANS, p: int = 6, rho: float = S3_RHO) -> DataMatrix:
    """Groups with normal margins tied together by a 2-df t copula."""
    rngs = _streams(seed, len(sizes))
    blocks, labels = [], []
    for g, (size, mu) in enumerate(zip(sizes, means)):
        t, tail = s3_uniforms(rngs[g], size, p, rho)
        q = inv_norm_cdf(tail)
        blocks.append(mu + np.where(t > 0, -q, q))
        labels += [g + 1] * size
    return DataMatrix(np.vstack(blocks), VariableSchema.all_continuous(p), np.array(labels))


@dataclass(frozen=True)
class S4Geometry:
    """Placement of the four shapes inside the unit square."""

    square: Tuple[float, float, float] = (0.05, 0.55, 0.30)  # lower-left x, y, side
    rectangle: Tuple[float, float, float, float] = (0.40, 0.60, 0.55, 0.20)  # x, y, width, height
    half_circle: Tuple[float, float, float] = (0.30, 0.45, 0.25)  # center x, y, radius; lower half
    circle: Tuple[float, float, float] = (0.775, 0.30, 0.17)  # center x, y, radius
    noise_sd: float = 0.05


def _rect_boundary(u, x0, y0, w, h):
    per = 2 * (w + h)
    s = u * per
    x = np.empty_like(s)
    y = np.empty_like(s)
    a = s < w
    b = (s >= w) & (s < w + h)
    c = (s >= w + h) & (s < 2 * w + h)
    d = s >= 2 * w + h
    x[a], y[a] = x0 + s[a], y0
    x[b], y[b] = x0 + w, y0 + (s[b] - w)
    x[c], y[c] = x0 + w - (s[c] - w - h), y0 + h
    x[d], y[d] = x0, y0 + h - (s[d] - 2 * w - h)
    return np.column_stack([x, y])


def s4_skeleton(rngs, size: int, geom: S4Geometry):
    sq = geom.square
    rc = geom.rectangle
    hc = geom.half_circle
    ci = geom.circle
    square = _rect_boundary(rngs[0].random(size), sq[0], sq[1], sq[2], sq[2])
    rect = _rect_boundary(rngs[1].random(size), *rc)
    theta = np.pi + np.pi * rngs[2].random(size)
    half = np.column_stack([hc[0] + hc[2] * np.cos(theta), hc[1] + hc[2] * np.sin(theta)])
    phi = 2 * np.pi * rngs[3].random(size)
    circ = np.column_stack([ci[0] + ci[2] * np.cos(phi), ci[1] + ci[2] * np.sin(phi)])
    return [square, rect, half, circ]


def gen_s4(seed: int = 0, size: int = 100, geom: S4Geometry = S4Geometry()) -> DataMatrix:
    """Square, rectangle, half-circle and circle outlines with Gaussian noise."""
    rngs = _streams(seed, 8)
    shapes = s4_skeleton(rngs[:4], size, geom)
    blocks = []
    for g, pts in enumerate(shapes):
        noise = inv_norm_cdf(rngs[4 + g].random(pts.shape)) * geom.noise_sd
        blocks.append(pts + noise)
    labels = np.repeat(np.arange(1, 5), size)
    return DataMatrix(np.vstack(blocks), VariableSchema.all_continuous(2), labels)
