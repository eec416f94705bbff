"""Cluster quality: silhouette widths, ASW, sizes and matched accuracy."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .dataset import ClusterAssignment, DistanceMatrix


class UndefinedASWError(ValueError):
    """Silhouette widths need at least two clusters."""


@dataclass(frozen=True)
class SilhouetteProfile:
    widths: np.ndarray
    cluster_means: Dict[int, float]
    asw: float


def _labels(assignment) -> np.ndarray:
    if isinstance(assignment, ClusterAssignment):
        return assignment.as_array()
    return np.asarray(assignment, dtype=int).reshape(-1)


def _entries(D) -> np.ndarray:
    return D.entries if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=float)


def silhouette_widths(assignment, D) -> SilhouetteProfile:
    """Per-member silhouette widths against a distance matrix.

    Members of singleton clusters get width 0. Labels need not be
    contiguous here, which lets callers score sub-assignments directly.
    """
    labels = _labels(assignment)
    E = _entries(D)
    if E.shape != (labels.size, labels.size):
        raise ValueError(f"distance matrix shape {E.shape} does not match {labels.size} labels")
    uniq, idx = np.unique(labels, return_inverse=True)
    K = uniq.size
    if K < 2:
        raise UndefinedASWError("ASW is undefined for a single cluster")
    onehot = np.zeros((labels.size, K))
    onehot[np.arange(labels.size), idx] = 1.0
    sizes = onehot.sum(axis=0)
    sums = E @ onehot
    own_size = sizes[idx]
    rows = np.arange(labels.size)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = sums[rows, idx] / (own_size - 1)
        means = sums / sizes
    means[rows, idx] = np.inf
    b = means.min(axis=1)
    denom = np.maximum(a, b)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 0, (b - a) / denom, 0.0)
    s[own_size == 1] = 0.0
    cluster_means = {int(u): float(s[idx == j].mean()) for j, u in enumerate(uniq)}
    return SilhouetteProfile(s, cluster_means, float(s.mean()))


def asw(assignment, D) -> float:
    """Average silhouette width."""
    return silhouette_widths(assignment, D).asw


def cluster_sizes(assignment) -> List[int]:
    labels = _labels(assignment)
    uniq, counts = np.unique(labels, return_counts=True)
    return [int(c) for c in counts]


def accuracy(assignment, truth: Sequence[int]) -> float:
    """Correct-classification percentage under the best injective relabeling.

    Predicted clusters left without a partner class count as wholly
    misclassified.
    """
    pred = _labels(assignment)
    truth = np.asarray(truth, dtype=int).reshape(-1)
    if pred.size != truth.size:
        raise ValueError(f"length mismatch: {pred.size} predictions vs {truth.size} truths")
    if pred.size == 0:
        return 100.0
    p_uniq, p_idx = np.unique(pred, return_inverse=True)
    t_uniq, t_idx = np.unique(truth, return_inverse=True)
    table = np.zeros((p_uniq.size, t_uniq.size), dtype=int)
    np.add.at(table, (p_idx, t_idx), 1)
    if max(table.shape) <= 8:
        best = _best_matching_bruteforce(table)
    else:
        r, c = linear_sum_assignment(table, maximize=True)
        best = int(table[r, c].sum())
    return 100.0 * best / pred.size


def _best_matching_bruteforce(table: np.ndarray) -> int:
    if table.shape[0] > table.shape[1]:
        table = table.T
    k, m = table.shape
    best = 0
    rows = list(range(k))
    for cols in itertools.permutations(range(m), k):
        total = int(table[rows, list(cols)].sum())
        if total > best:
            best = total
    return best
