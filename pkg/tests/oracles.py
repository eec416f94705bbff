"""Independent brute-force reimplementations used as test oracles.

Nothing here imports the code under test beyond plain data containers, so
each check compares two independently written routes.
"""

import math

import numpy as np


def brute_euclidean_matrix(X):
    X = [list(map(float, row)) for row in X]
    n = len(X)
    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = 0.0
            for a, b in zip(X[i], X[j]):
                d = a - b
                s += d * d
            out[i][j] = math.sqrt(s)
    return np.array(out)


def brute_silhouette(labels, D):
    """Member-by-member silhouette widths in plain Python, singletons scored 0."""
    labels = [int(v) for v in labels]
    D = np.asarray(D, dtype=float)
    n = len(labels)
    clusters = sorted(set(labels))
    widths = []
    for i in range(n):
        own = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if not own:
            widths.append(0.0)
            continue
        a = sum(D[i, j] for j in own) / len(own)
        b = math.inf
        for c in clusters:
            if c == labels[i]:
                continue
            members = [j for j in range(n) if labels[j] == c]
            b = min(b, sum(D[i, j] for j in members) / len(members))
        m = max(a, b)
        widths.append(0.0 if m == 0 else (b - a) / m)
    return widths


def trapezoid(f, lo, hi, step):
    n = int(math.ceil((hi - lo) / step))
    xs = [lo + k * (hi - lo) / n for k in range(n + 1)]
    ys = [f(x) for x in xs]
    h = (hi - lo) / n
    return h * (sum(ys) - 0.5 * (ys[0] + ys[-1]))


def normal_pdf(x):
    return math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)


def reference_sm_algorithm(data, h, n_dash):
    """Plain-loop restatement of the algorithm with the original R loop's quirks.

    Distances are recomputed from the surviving rows and rescaled by their
    maximum every round, the self-distance stays in each KDE row, mergers
    are applied unconditionally and merged members receive the positional
    index of their target within the list of large clusters. Returns the
    raw label vector (1-based, possibly non-contiguous) and its ASW.
    """
    data = np.asarray(data, dtype=float)
    n, p = data.shape

    def dist(X):
        return np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))

    def f(x, y, hh):
        return sum(normal_pdf((x - yy) / hh) for yy in y) / (len(y) * hh)

    M = dist(data)
    M = M / M.max()
    cl = [None] * n
    rows = list(range(n))
    M1 = M.copy()
    index = 0
    while len(rows) > 1:
        index += 1
        scores = [f(h / 2, M1[r], h) for r in range(len(rows))]
        mm = scores.index(max(scores))
        exclude = [j for j in range(len(rows)) if M1[mm, j] < h]
        for j in exclude:
            for i in range(n):
                if np.sum((data[rows[j]] - data[i]) ** 2) == 0:
                    cl[i] = index
        rows = [r for k, r in enumerate(rows) if k not in exclude]
        if len(rows) > 1:
            M1 = dist(data[rows])
            M1 = M1 / M1.max()
    cl = [index + 1 if v is None else v for v in cl]

    clus = sorted(set(cl))
    clusindex = [[i for i in range(n) if cl[i] == c] for c in clus]
    highden = [j for j in range(len(clus)) if len(clusindex[j]) > n_dash - 1]
    lowden = [i for j in range(len(clus)) if len(clusindex[j]) < n_dash for i in clusindex[j]]
    for member in lowden:
        means = [np.mean(M[member, clusindex[j]]) for j in highden]
        cl[member] = means.index(min(means)) + 1
    widths = brute_silhouette(cl, dist(data))
    return cl, float(np.mean(widths))
