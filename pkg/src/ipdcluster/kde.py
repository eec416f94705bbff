"""Univariate Gaussian kernel density estimation on rows of interpoint distances."""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def gaussian_kernel(u):
    """Standard normal density; accepts scalars or arrays."""
    u = np.asarray(u, dtype=float)
    out = np.exp(-0.5 * u * u) * _INV_SQRT_2PI
    return float(out) if out.ndim == 0 else out


def kde_at(x: float, sample: Sequence[float], h: float) -> float:
    """Kernel density estimate at *x* from *sample* with bandwidth *h*."""
    sample = np.asarray(sample, dtype=float).reshape(-1)
    if sample.size == 0:
        raise ValueError("kde_at needs a non-empty sample")
    if not h > 0:
        raise ValueError(f"bandwidth must be positive, got {h}")
    k = np.sort(gaussian_kernel((x - sample) / h))
    return float(k.sum() / (sample.size * h))


def neighborhood_probability(dist_row: Sequence[float], h: float) -> float:
    """Estimated probability mass of the h-neighborhood of one member.

    *dist_row* holds the member's distances to every other member, the
    self-distance left out. The density of those distances is evaluated
    at ``h/2`` and multiplied by the neighborhood width ``h``.
    """
    dist_row = np.asarray(dist_row, dtype=float).reshape(-1)
    if dist_row.size == 0:
        raise ValueError("a single member has no interpoint distances")
    if not 0.0 < h:
        raise ValueError(f"bandwidth must be positive, got {h}")
    # Same value as kde_at(h/2, row, h) * h, with the h factors cancelled.
    k = np.sort(gaussian_kernel((h / 2.0 - dist_row) / h))
    return float(k.sum() / dist_row.size)


def neighborhood_probabilities(
    D: np.ndarray, h: float, include_self: bool = False, start: int = 0, stop: Optional[int] = None
) -> np.ndarray:
    """Row-wise :func:`neighborhood_probability` for rows ``start:stop`` of a square matrix.

    Kernel values are summed in sorted order, so two members whose rows
    hold the same multiset of distances get bit-identical scores no matter
    where the entries sit in the row. ``include_self`` keeps the zero
    self-distance in each row instead of dropping it.
    """
    D = np.atleast_2d(np.asarray(D, dtype=float))
    m = D.shape[0]
    stop = m if stop is None else stop
    if m < 2 and not include_self:
        raise ValueError("need at least two members")
    K = np.atleast_2d(gaussian_kernel((h / 2.0 - D[start:stop]) / h))
    if include_self:
        count = m
    else:
        K = K.copy()
        rows = np.arange(K.shape[0])
        K[rows, start + rows] = 0.0
        count = m - 1
    K.sort(axis=1)
    return K.sum(axis=1) / count
