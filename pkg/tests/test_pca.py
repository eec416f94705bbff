import numpy as np
import pytest

from ipdcluster.dataset import DataError, DataMatrix
from ipdcluster.datagen import gen_s3
from ipdcluster.pca import _top2_power, jacobi_eigh, pca2


def char_poly_roots(C):
    """Eigenvalues of a symmetric p x p matrix (p <= 3) from its characteristic polynomial."""
    p = C.shape[0]
    if p == 2:
        coeffs = [1.0, -np.trace(C), np.linalg.det(C)]
    else:
        minors = sum(C[i, i] * C[j, j] - C[i, j] * C[j, i] for i in range(3) for j in range(i + 1, 3))
        coeffs = [1.0, -np.trace(C), minors, -np.linalg.det(C)]
    return np.sort(np.real(np.roots(coeffs)))[::-1]


def test_axis_aligned_diagonal_covariance():
    X = np.array([[2.0, 1.0], [-2.0, 1.0], [2.0, -1.0], [-2.0, -1.0]])
    scores, frac = pca2(X)
    assert frac == pytest.approx((0.8, 0.2), abs=1e-12)
    assert np.allclose(np.abs(scores), np.abs(X - X.mean(axis=0)), atol=1e-12)


@pytest.mark.parametrize("p", [2, 3])
def test_eigenvalues_match_characteristic_polynomial(rng, p):
    X = rng.normal(size=(50, p)) @ rng.normal(size=(p, p))
    C = np.cov(X, rowvar=False)
    w, _ = jacobi_eigh(C)
    assert w == pytest.approx(char_poly_roots(C), rel=1e-8)
    _, frac = pca2(X)
    assert frac == pytest.approx(tuple(w[:2] / np.trace(C)), rel=1e-10)


def test_fractions_ordered_and_scores_orthogonal(rng):
    X = rng.normal(size=(80, 5)) * [5, 3, 2, 1, 0.5]
    scores, frac = pca2(DataMatrix.from_array(X))
    assert frac[0] >= frac[1] and sum(frac) <= 1 + 1e-12
    u = scores / np.linalg.norm(scores, axis=0)
    assert abs(u[:, 0] @ u[:, 1]) < 1e-8


def test_sign_convention(rng):
    X = rng.normal(size=(30, 3)) * [3, 2, 1]
    scores, _ = pca2(X)
    scores_neg, _ = pca2(-X)
    assert np.allclose(scores, -scores_neg, atol=1e-10) or np.allclose(scores, scores_neg, atol=1e-10)


def test_power_iteration_agrees_with_jacobi(rng):
    X = rng.normal(size=(40, 30)) * np.linspace(5, 0.1, 30)
    Xc = X - X.mean(axis=0)
    w_j, V_j = jacobi_eigh(Xc.T @ Xc / 39)
    w_p, V_p = _top2_power(Xc)
    assert w_p == pytest.approx(w_j[:2], rel=1e-8)
    assert np.abs(np.abs(V_p.T @ V_j[:, :2]) - np.eye(2)).max() < 1e-6


def test_wide_data_uses_power_path(rng):
    X = rng.normal(size=(20, 600))
    X[:10] += 3
    scores, frac = pca2(X)
    assert scores.shape == (20, 2)
    assert frac[0] > frac[1] > 0


def test_zero_variance():
    with pytest.raises(DataError):
        pca2(np.ones((4, 3)))


def test_s3_first_component_share():
    shares = [pca2(gen_s3(seed))[1][0] for seed in range(10)]
    assert abs(np.mean(shares) - 0.911) <= 0.05
