"""Two-component principal component projection for plotting."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from .dataset import DataError, DataMatrix

JACOBI_MAX_P = 500


def jacobi_eigh(A: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm falls below
    ``tol`` times the matrix norm. Returns eigenvalues in descending order
    and the matching eigenvectors as columns.
    """
    A = np.array(A, dtype=float)
    p = A.shape[0]
    V = np.eye(p)
    scale = max(np.linalg.norm(A), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.sqrt(max(0.0, (A * A).sum() - (np.diag(A) ** 2).sum()))
        if off < tol * scale:
            break
        for i in range(p - 1):
            for j in range(i + 1, p):
                aij = A[i, j]
                if aij == 0.0:
                    continue
                theta = (A[j, j] - A[i, i]) / (2.0 * aij)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ai = A[:, i].copy()
                aj = A[:, j].copy()
                A[:, i] = c * ai - s * aj
                A[:, j] = s * ai + c * aj
                ai = A[i, :].copy()
                aj = A[j, :].copy()
                A[i, :] = c * ai - s * aj
                A[j, :] = s * ai + c * aj
                vi = V[:, i].copy()
                V[:, i] = c * vi - s * V[:, j]
                V[:, j] = s * vi + c * V[:, j]
    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def _top2_power(Xc: np.ndarray, tol: float = 1e-9, max_iter: int = 10_000) -> Tuple[np.ndarray, np.ndarray]:
    """Top-2 right singular directions of *Xc* by orthogonal subspace iteration."""
    p = Xc.shape[1]
    Q = np.eye(p, 2)
    for _ in range(max_iter):
        Z = Xc.T @ (Xc @ Q)
        Q_new, _ = np.linalg.qr(Z)
        # Subspace change measured through the projection onto the old basis.
        if np.linalg.norm(Q_new - Q @ (Q.T @ Q_new)) < tol:
            Q = Q_new
            break
        Q = Q_new
    n = Xc.shape[0]
    M = Q.T @ (Xc.T @ (Xc @ Q)) / (n - 1)
    w, R = jacobi_eigh(M)
    return w, Q @ R


def _fix_signs(V: np.ndarray) -> np.ndarray:
    V = V.copy()
    for k in range(V.shape[1]):
        if V[np.argmax(np.abs(V[:, k])), k] < 0:
            V[:, k] = -V[:, k]
    return V


def pca2(data) -> Tuple[np.ndarray, Tuple[float, float]]:
    """Project onto the first two principal components.

    Returns the n x 2 scores and each component's share of total variance.
    Each component is signed so its largest-magnitude loading is positive.
    """
    X = data.values if isinstance(data, DataMatrix) else np.asarray(data, dtype=float)
    n, p = X.shape
    if n < 2 or p < 2:
        raise DataError("pca2 needs at least two rows and two columns")
    Xc = X - X.mean(axis=0)
    total = float((Xc * Xc).sum() / (n - 1))
    if total <= 0:
        raise DataError("data have zero variance")
    if p <= JACOBI_MAX_P:
        w, V = jacobi_eigh(Xc.T @ Xc / (n - 1))
        w, V = w[:2], V[:, :2]
    else:
        w, V = _top2_power(Xc)
    V = _fix_signs(V)
    fractions = (float(max(w[0], 0.0) / total), float(max(w[1], 0.0) / total))
    return Xc @ V, fractions
