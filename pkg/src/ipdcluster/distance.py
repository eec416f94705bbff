"""Interpoint distances (Euclidean, Gower, spherical geodesic) and matrix normalization."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence, Tuple

import numpy as np

from .dataset import (
    CONTINUOUS,
    DataError,
    DataMatrix,
    DegenerateDataError,
    DistanceMatrix,
    VariableSchema,
    check,
    column_ranges,
)

EUCLIDEAN = "euclidean"
GOWER = "gower"
GEODESIC = "geodesic_sphere"
PRECOMPUTED = "precomputed"
MEASURES = (EUCLIDEAN, GOWER, GEODESIC, PRECOMPUTED)

EARTH_RADIUS_M = 6_371_008.8


def euclidean(a: Sequence[float], b: Sequence[float]) -> float:
    if len(a) != len(b):
        raise DataError(f"length mismatch: {len(a)} vs {len(b)}")
    s = 0.0
    for x, y in zip(a, b):
        d = float(x) - float(y)
        s += d * d
    return math.sqrt(s)


def gower(a, b, schema: VariableSchema, ranges: Sequence[Tuple[float, float]]) -> float:
    """Unweighted Gower dissimilarity between two rows.

    Continuous columns contribute ``|a_k - b_k| / range_k`` (zero on a
    constant column); binary and categorical columns contribute simple
    mismatch.
    """
    if not (len(a) == len(b) == len(schema) == len(ranges)):
        raise DataError("gower: row, schema and range lengths must agree")
    total = 0.0
    for x, y, kind, (lo, hi) in zip(a, b, schema.kinds, ranges):
        if kind == CONTINUOUS:
            span = hi - lo
            total += abs(x - y) / span if span > 0 else 0.0
        else:
            total += 0.0 if x == y else 1.0
    return total / len(schema)


def _check_lonlat(lon, lat):
    if not (-180.0 <= lon <= 180.0) or not (-90.0 <= lat <= 90.0):
        raise DataError(f"coordinate out of range: lon={lon}, lat={lat}")


def geodesic_sphere(a: Tuple[float, float], b: Tuple[float, float]) -> float:
    """Great-circle distance in meters between two (lon, lat) points given in degrees."""
    _check_lonlat(*a)
    _check_lonlat(*b)
    if a[0] == b[0] and a[1] == b[1]:
        return 0.0
    lon1, lat1, lon2, lat2 = map(math.radians, (a[0], a[1], b[0], b[1]))
    hav = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    return 2 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(hav)))


def _row_blocks(n: int, n_jobs: int):
    n_jobs = max(1, min(n_jobs, n))
    edges = np.linspace(0, n, n_jobs + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def _euclidean_block(X: np.ndarray, lo: int, hi: int) -> np.ndarray:
    # Column-sequential accumulation matches the scalar definition bit for bit.
    acc = np.zeros((hi - lo, X.shape[0]))
    for k in range(X.shape[1]):
        col = X[:, k]
        acc += (col[lo:hi, None] - col[None, :]) ** 2
    return np.sqrt(acc)


def _gower_block(X, lo, hi, kinds, ranges):
    acc = np.zeros((hi - lo, X.shape[0]))
    for k, kind in enumerate(kinds):
        col = X[:, k]
        if kind == CONTINUOUS:
            span = ranges[k][1] - ranges[k][0]
            if span > 0:
                acc += np.abs(col[lo:hi, None] - col[None, :]) / span
        else:
            acc += (col[lo:hi, None] != col[None, :]).astype(float)
    return acc / len(kinds)


def _geodesic_block(X, lo, hi):
    lon = np.radians(X[:, 0])
    lat = np.radians(X[:, 1])
    dlat = lat[None, :] - lat[lo:hi, None]
    dlon = lon[None, :] - lon[lo:hi, None]
    hav = np.sin(dlat / 2) ** 2 + np.cos(lat[lo:hi, None]) * np.cos(lat[None, :]) * np.sin(dlon / 2) ** 2
    out = 2 * EARTH_RADIUS_M * np.arcsin(np.minimum(1.0, np.sqrt(hav)))
    same = (X[lo:hi, None, 0] == X[None, :, 0]) & (X[lo:hi, None, 1] == X[None, :, 1])
    out[same] = 0.0
    return out


def pairwise_matrix(data: DataMatrix, measure: str = EUCLIDEAN, n_jobs: int = 1) -> DistanceMatrix:
    """Full raw interpoint distance matrix under *measure*.

    Rows may be computed in ``n_jobs`` threads; each entry is produced by
    the same arithmetic regardless of the split, so the result does not
    depend on ``n_jobs``.
    """
    check(data)
    X = np.ascontiguousarray(data.values)
    n = data.n
    if measure == EUCLIDEAN:
        block = _euclidean_block
    elif measure == GOWER:
        kinds = data.schema.kinds
        ranges = column_ranges(data)

        def block(X, lo, hi):
            return _gower_block(X, lo, hi, kinds, ranges)

    elif measure == GEODESIC:
        if data.p != 2:
            raise DataError("geodesic_sphere needs exactly two columns (longitude, latitude)")
        for lon, lat in X:
            _check_lonlat(lon, lat)
        block = _geodesic_block
    elif measure == PRECOMPUTED:
        raise DataError("precomputed distances are supplied as a matrix, not derived from data")
    else:
        raise DataError(f"unknown distance measure {measure!r}")

    blocks = _row_blocks(n, n_jobs)
    if len(blocks) == 1:
        parts = [block(X, 0, n)]
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            parts = list(pool.map(lambda b: block(X, *b), blocks))
    D = np.vstack(parts)
    # Enforce exact symmetry and a zero diagonal whatever the float path did.
    D = np.minimum(D, D.T) if measure == GEODESIC else D
    np.fill_diagonal(D, 0.0)
    return DistanceMatrix(D, normalized=False)


def from_square(entries, tol: float = 1e-9) -> DistanceMatrix:
    """Wrap a user-supplied square matrix after checking symmetry and the diagonal."""
    M = np.asarray(entries, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DataError(f"precomputed distances must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DataError("precomputed distances contain non-finite entries")
    if np.any(M < 0):
        raise DataError("precomputed distances must be nonnegative")
    if np.any(np.abs(np.diag(M)) > tol):
        raise DataError("precomputed distances must have a zero diagonal")
    asym = np.abs(M - M.T)
    if asym.size and asym.max() > tol:
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise DataError(f"precomputed distances not symmetric at ({i}, {j})")
    M = (M + M.T) / 2
    np.fill_diagonal(M, 0.0)
    return DistanceMatrix(M, normalized=False)


def normalize_matrix(D: DistanceMatrix) -> DistanceMatrix:
    """Divide every entry by the maximum so distances lie in [0, 1]."""
    E = D.entries
    if E.shape[0] < 2:
        raise DataError("normalization needs at least two members")
    top = E.max()
    if top <= 0:
        raise DegenerateDataError("all members are identical; the data form a single cluster")
    out = E / top
    return DistanceMatrix(out, normalized=True)


def resolve(data: Optional[DataMatrix], measure: str, distances: Optional[DistanceMatrix] = None, n_jobs: int = 1):
    """Return the raw distance matrix for *data* or pass through a precomputed one."""
    if distances is not None:
        return distances
    if data is None:
        raise DataError("either data or a precomputed distance matrix is required")
    return pairwise_matrix(data, measure, n_jobs=n_jobs)
