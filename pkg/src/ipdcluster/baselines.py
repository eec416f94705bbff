"""Comparison algorithms: Lloyd k-means, PAM k-medoids, brute-force DBSCAN, kNN-distance profile."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .dataset import ClusterAssignment, DataMatrix, DistanceMatrix
from .validation import asw as _asw


def _entries(D) -> np.ndarray:
    return D.entries if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=float)


def _points(data) -> np.ndarray:
    return data.values if isinstance(data, DataMatrix) else np.atleast_2d(np.asarray(data, dtype=float))


@dataclass(frozen=True)
class KMeansResult:
    assignment: ClusterAssignment
    centroids: np.ndarray
    inertia: float
    n_iter: int
    history: Tuple[float, ...] = field(default=(), repr=False)


def _kmeans_pp(X: np.ndarray, K: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centers = [X[rng.integers(n)]]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for _ in range(1, K):
        total = d2.sum()
        if total <= 0:
            idx = int(rng.integers(n))
        else:
            idx = int(np.searchsorted(np.cumsum(d2), rng.random() * total, side="right"))
            idx = min(idx, n - 1)
        centers.append(X[idx])
        d2 = np.minimum(d2, ((X - X[idx]) ** 2).sum(axis=1))
    return np.array(centers)


def _lloyd(X, centers, max_iter):
    history = []
    labels = None
    for it in range(1, max_iter + 1):
        d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new = d2.argmin(axis=1)
        history.append(float(d2[np.arange(X.shape[0]), new].sum()))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for k in range(centers.shape[0]):
            members = X[labels == k]
            if members.size:
                centers[k] = members.mean(axis=0)
    inertia = float(((X - centers[labels]) ** 2).sum())
    history.append(inertia)
    return labels, centers, inertia, it, history


def kmeans(data, K: int, seed: int = 0, restarts: int = 10, max_iter: int = 300) -> KMeansResult:
    """Best of *restarts* Lloyd runs from k-means++ seeds, by within-cluster sum of squares."""
    X = _points(data)
    n = X.shape[0]
    if n == 0:
        raise ValueError("kmeans needs data")
    if not 1 <= K <= n:
        raise ValueError(f"K must lie in 1..{n}, got {K}")
    streams = np.random.SeedSequence(seed).spawn(max(1, restarts))
    best = None
    for ss in streams:
        rng = np.random.default_rng(ss)
        labels, centers, inertia, it, hist = _lloyd(X, _kmeans_pp(X, K, rng), max_iter)
        if best is None or inertia < best[2]:
            best = (labels, centers, inertia, it, hist)
    labels, centers, inertia, it, hist = best
    # Relabel by first appearance so labels are 1..K in row order.
    order = {}
    for v in labels:
        order.setdefault(int(v), len(order) + 1)
    used = sorted(order, key=order.get)
    return KMeansResult(
        ClusterAssignment(tuple(order[int(v)] for v in labels)), centers[used], inertia, it, tuple(hist)
    )


@dataclass(frozen=True)
class PamResult:
    assignment: ClusterAssignment
    medoids: Tuple[int, ...]
    cost: float
    swaps: Tuple[float, ...] = ()


def _pam_cost(E, medoids):
    return float(E[:, medoids].min(axis=1).sum())


def pam(D, K: int) -> PamResult:
    """Partitioning around medoids: greedy BUILD then first-improvement SWAP.

    Swaps are scanned medoid by medoid, candidate by candidate in index
    order; any swap that strictly lowers the total cost is taken and the
    scan restarts.
    """
    E = _entries(D)
    n = E.shape[0]
    if not 1 <= K <= n:
        raise ValueError(f"K must lie in 1..{n}, got {K}")
    medoids: List[int] = [int(np.argmin(E.sum(axis=1)))]
    nearest = E[:, medoids[0]].copy()
    while len(medoids) < K:
        gains = np.maximum(nearest[:, None] - E, 0.0).sum(axis=0)
        gains[medoids] = -np.inf
        c = int(np.argmax(gains))
        medoids.append(c)
        nearest = np.minimum(nearest, E[:, c])

    cost = _pam_cost(E, medoids)
    costs = [cost]
    improved = True
    while improved:
        improved = False
        for pos in range(K):
            for cand in range(n):
                if cand in medoids:
                    continue
                trial = medoids.copy()
                trial[pos] = cand
                c = _pam_cost(E, trial)
                if c < cost - 1e-12 * max(1.0, abs(cost)):
                    medoids, cost = trial, c
                    costs.append(c)
                    improved = True
                    break
            if improved:
                break
    medoids_sorted = sorted(medoids)
    labels = E[:, medoids_sorted].argmin(axis=1) + 1
    return PamResult(ClusterAssignment.compact(labels), tuple(medoids_sorted), cost, tuple(costs))


NOISE = 0


@dataclass(frozen=True)
class DbscanResult:
    labels: Tuple[int, ...]
    core: Tuple[bool, ...]
    eps: float
    min_pts: int

    @property
    def n_clusters(self) -> int:
        return len({v for v in self.labels if v != NOISE})

    @property
    def n_noise(self) -> int:
        return sum(1 for v in self.labels if v == NOISE)

    def cluster_sizes(self) -> List[int]:
        lab = np.asarray(self.labels)
        return [int((lab == k).sum()) for k in range(1, self.n_clusters + 1)]


def dbscan(D, eps: float, min_pts: int) -> DbscanResult:
    """DBSCAN over a full distance matrix; noise is labeled 0.

    Neighborhoods are ``d <= eps`` and include the point itself. Clusters
    grow from unvisited core points in ascending index order; a border point
    keeps the first cluster that reaches it.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if min_pts < 1:
        raise ValueError("min_pts must be at least 1")
    E = _entries(D)
    n = E.shape[0]
    neighbors = [np.flatnonzero(E[i] <= eps) for i in range(n)]
    core = np.array([nb.size >= min_pts for nb in neighbors])
    labels = np.full(n, NOISE, dtype=int)
    current = 0
    for i in range(n):
        if labels[i] != NOISE or not core[i]:
            continue
        current += 1
        labels[i] = current
        queue = [i]
        while queue:
            p = queue.pop(0)
            for q in neighbors[p]:
                if labels[q] == NOISE:
                    labels[q] = current
                    if core[q]:
                        queue.append(int(q))
    return DbscanResult(tuple(int(v) for v in labels), tuple(bool(c) for c in core), float(eps), int(min_pts))


NOISE_MODES = ("exclude", "group", "singletons")


def dbscan_asw(result: DbscanResult, D, noise: str = "exclude") -> Optional[float]:
    """ASW of a DBSCAN result under a chosen treatment of noise points.

    ``exclude`` drops them, ``group`` scores all noise points together as one
    extra cluster (what a silhouette routine does when handed the raw labels
    with noise as 0), ``singletons`` scores each as its own cluster.
    """
    if noise not in NOISE_MODES:
        raise ValueError(f"noise must be one of {NOISE_MODES}")
    E = _entries(D)
    lab = np.asarray(result.labels).copy()
    keep = np.arange(lab.size)
    if noise == "exclude":
        keep = np.flatnonzero(lab != NOISE)
        lab = lab[keep]
    elif noise == "singletons":
        idx = np.flatnonzero(lab == NOISE)
        lab[idx] = lab.max() + 1 + np.arange(idx.size)
    if np.unique(lab).size < 2:
        return None
    return _asw(lab, E[np.ix_(keep, keep)])


def knn_dist_profile(D, k: int) -> np.ndarray:
    """Sorted k-th nearest-neighbor distances (self excluded), ascending."""
    E = _entries(D)
    n = E.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}, got {k}")
    masked = E.copy()
    np.fill_diagonal(masked, np.inf)
    kth = np.partition(masked, k - 1, axis=1)[:, k - 1]
    return np.sort(kth)
