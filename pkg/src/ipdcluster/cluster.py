"""Densest-neighborhood extraction clustering with a minimum-size merge step.

Each round scores every unclustered member by the kernel-estimated
probability that another member falls within distance ``h`` of it, takes
the best-scoring member as a seed and removes its ``h``-neighborhood as the
next cluster. Clusters smaller than ``n_prime`` are then dissolved into the
nearest cluster that is large enough, subject to an ASW check.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .dataset import (
    MERGE_ALWAYS,
    ClusterAssignment,
    ClusterReport,
    DataMatrix,
    DegenerateDataError,
    DistanceMatrix,
    HyperParams,
    RoundTrace,
)
from .distance import EUCLIDEAN, normalize_matrix, resolve
from .kde import neighborhood_probabilities
from .validation import accuracy, asw, cluster_sizes

log = logging.getLogger(__name__)


def _entries(D) -> np.ndarray:
    return D.entries if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=float)


def densest_member(D_norm, h: float, n_jobs: int = 1) -> int:
    """Index of the member with the highest neighborhood probability.

    Ties go to the smallest index. Rows are scored independently, so
    splitting them over ``n_jobs`` threads cannot change the answer.
    """
    E = _entries(D_norm)
    m = E.shape[0]
    if m < 2:
        raise ValueError("densest_member needs at least two members")
    n_jobs = max(1, min(n_jobs, m))
    if n_jobs == 1:
        scores = neighborhood_probabilities(E, h)
    else:
        edges = np.linspace(0, m, n_jobs + 1).astype(int)
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            parts = pool.map(lambda b: neighborhood_probabilities(E, h, start=b[0], stop=b[1]), zip(edges[:-1], edges[1:]))
            scores = np.concatenate(list(parts))
    return int(np.argmax(scores))


def extract_cluster(D_norm, center: int, h: float) -> List[int]:
    """Members strictly closer than ``h`` to *center*, the center included."""
    E = _entries(D_norm)
    if not 0 <= center < E.shape[0]:
        raise IndexError(f"center {center} out of range")
    members = np.flatnonzero(E[center] < h)
    if center not in members:
        members = np.sort(np.append(members, center))
    return [int(i) for i in members]


def run_rounds(
    D, h: float, renormalize_each_round: bool = True, n_jobs: int = 1
) -> Tuple[ClusterAssignment, List[RoundTrace]]:
    """Peel off clusters until at most one member is left.

    *D* may be raw or already normalized: the first round always divides by
    the global maximum. With ``renormalize_each_round`` the surviving
    submatrix is rescaled to a unit maximum before every later round,
    otherwise the global scaling is kept throughout.
    """
    E = _entries(D)
    n = E.shape[0]
    if n == 0:
        raise ValueError("no members to cluster")
    labels = np.zeros(n, dtype=int)
    rounds: List[RoundTrace] = []
    if n == 1:
        labels[0] = 1
        rounds.append(RoundTrace(1, 0, (0,), None))
        return ClusterAssignment(tuple(labels)), rounds

    global_max = float(E.max())
    if global_max <= 0:
        raise DegenerateDataError("all members are identical; the data form a single cluster")

    remaining = np.arange(n)
    label = 0
    while remaining.size > 1:
        label += 1
        sub = E[np.ix_(remaining, remaining)]
        top = float(sub.max()) if renormalize_each_round else global_max
        if top > 0:
            sub = sub / top
        center = densest_member(sub, h, n_jobs=n_jobs)
        local = extract_cluster(sub, center, h)
        taken = remaining[local]
        labels[taken] = label
        rounds.append(RoundTrace(label, int(remaining[center]), tuple(int(i) for i in taken), top))
        remaining = np.delete(remaining, local)
    if remaining.size == 1:
        label += 1
        labels[remaining[0]] = label
        rounds.append(RoundTrace(label, int(remaining[0]), (int(remaining[0]),), None))
    return ClusterAssignment(tuple(labels)), rounds


def merge_small_clusters(pre: ClusterAssignment, D_norm, n_prime: int) -> ClusterAssignment:
    """Reassign members of clusters smaller than *n_prime* to the nearest large cluster.

    Nearness is the mean distance from the member to the large cluster's
    pre-merge members; ties go to the smaller label. If no cluster reaches
    *n_prime* the assignment is returned unchanged.
    """
    E = _entries(D_norm)
    labels = pre.as_array()
    uniq, counts = np.unique(labels, return_counts=True)
    big = uniq[counts >= n_prime]
    small = uniq[counts < n_prime]
    if small.size == 0:
        return pre
    if big.size == 0:
        log.warning("no cluster has at least %d members; merge step skipped", n_prime)
        return pre
    big_members = [np.flatnonzero(labels == b) for b in big]
    out = labels.copy()
    for i in np.flatnonzero(np.isin(labels, small)):
        means = np.array([E[i, idx].mean() for idx in big_members])
        out[i] = big[int(np.argmin(means))]
    return ClusterAssignment.compact(out)


def sm_cluster(
    data: Optional[DataMatrix] = None,
    measure: str = EUCLIDEAN,
    params: Optional[HyperParams] = None,
    distances: Optional[DistanceMatrix] = None,
    n_jobs: int = 1,
) -> ClusterReport:
    """Cluster *data* (or a precomputed raw distance matrix) end to end."""
    if params is None:
        raise ValueError("params are required")
    D = resolve(data, measure, distances, n_jobs=n_jobs)
    dist_name = measure if data is not None else "precomputed"
    n = D.n
    if n == 1:
        single = ClusterAssignment((1,))
        rounds = (RoundTrace(1, 0, (0,), None),)
        return ClusterReport(params, single, (1,), None, rounds, False, single, distance=dist_name)

    D_norm = normalize_matrix(D)
    pre, rounds = run_rounds(D, params.h, params.renormalize_each_round, n_jobs=n_jobs)
    post = merge_small_clusters(pre, D_norm, params.n_prime)

    pre_asw = asw(pre, D) if pre.K >= 2 else None
    if post == pre:
        final, merged, post_asw = pre, False, None
    else:
        post_asw = asw(post, D) if post.K >= 2 else None
        if params.merge_policy == MERGE_ALWAYS:
            take_post = True
        else:
            take_post = post_asw is not None and (pre_asw is None or post_asw > pre_asw)
        final, merged = (post, True) if take_post else (pre, False)
    final_asw = post_asw if merged else pre_asw

    extras = {}
    if data is not None and data.labels is not None:
        extras["accuracy"] = accuracy(final, data.labels)
    return ClusterReport(
        params=params,
        assignment=final,
        cluster_sizes=tuple(cluster_sizes(final)),
        asw=final_asw,
        rounds=tuple(rounds),
        merged=merged,
        pre_merge_assignment=pre,
        pre_merge_asw=pre_asw,
        merged_asw=post_asw,
        distance=dist_name,
        extras=extras,
    )


@dataclass(frozen=True)
class ScanRow:
    h: float
    n_prime: int
    asw: Optional[float]
    K_hat: int
    cluster_sizes: Tuple[int, ...]
    accuracy: Optional[float] = None


def scan(
    data: Optional[DataMatrix],
    measure: str,
    h_grid: Sequence[float],
    n_prime_grid: Sequence[int],
    renormalize_each_round: bool = True,
    merge_policy: str = "asw_guard",
    distances: Optional[DistanceMatrix] = None,
    n_jobs: int = 1,
) -> Tuple[List[ScanRow], ScanRow]:
    """Run every (h, n_prime) pair and pick the highest-ASW row.

    Ties go to the smaller h, then the smaller n_prime. Rows with a single
    cluster carry no ASW and never win.
    """
    h_grid = list(h_grid)
    n_prime_grid = list(n_prime_grid)
    if not h_grid or not n_prime_grid:
        raise ValueError("both grids must be non-empty")
    D = resolve(data, measure, distances, n_jobs=n_jobs)
    rows: List[ScanRow] = []
    for h in h_grid:
        for n_prime in n_prime_grid:
            params = HyperParams(h, n_prime, renormalize_each_round, merge_policy)
            report = sm_cluster(data, measure, params, distances=D, n_jobs=n_jobs)
            acc = accuracy(report.assignment, data.labels) if data is not None and data.labels is not None else None
            rows.append(ScanRow(h, n_prime, report.asw, report.K, report.cluster_sizes, acc))
    best = best_row(rows)
    if best is None:
        raise DegenerateDataError("every (h, n_prime) pair produced a single cluster")
    return rows, best


def best_row(rows: Iterable[ScanRow]) -> Optional[ScanRow]:
    candidates = [r for r in rows if r.asw is not None]
    if not candidates:
        return None
    return min(candidates, key=lambda r: (-r.asw, r.h, r.n_prime))
