import math

import numpy as np
import pytest

from ipdcluster.kde import gaussian_kernel, kde_at, neighborhood_probabilities, neighborhood_probability


@pytest.mark.parametrize(
    "u, expected", [(0.0, 0.3989423), (0.5, 0.3520653), (1.0, 0.2419707), (-1.0, 0.2419707)]
)
def test_gaussian_kernel_values(u, expected):
    assert gaussian_kernel(u) == pytest.approx(expected, abs=5e-8)


def test_gaussian_kernel_closed_form():
    assert gaussian_kernel(0.5) == pytest.approx(math.exp(-0.125) / math.sqrt(2 * math.pi), rel=1e-15)


@pytest.mark.parametrize(
    "x, sample, h, expected",
    [(0.0, [0.0], 1.0, 0.3989423), (0.0, [-1.0, 1.0], 1.0, 0.2419707), (0.0, [0.0], 2.0, 0.1994711)],
)
def test_kde_at_values(x, sample, h, expected):
    assert kde_at(x, sample, h) == pytest.approx(expected, abs=5e-8)


def test_kde_at_errors():
    with pytest.raises(ValueError):
        kde_at(0.0, [], 1.0)
    with pytest.raises(ValueError):
        kde_at(0.0, [1.0], 0.0)


def test_neighborhood_probability_values():
    assert neighborhood_probability([0.05], 0.1) == pytest.approx(0.3989423, abs=5e-8)
    assert neighborhood_probability([10.0], 0.1) < 1e-300
    assert neighborhood_probability([0.05, 0.15], 0.1) == pytest.approx(0.3204565, abs=5e-8)


def test_neighborhood_probability_is_scaled_kde(rng):
    row = rng.uniform(0, 1, 30)
    for h in (0.05, 0.1, 0.3):
        assert neighborhood_probability(row, h) == pytest.approx(kde_at(h / 2, row, h) * h, rel=1e-14)


def test_neighborhood_probability_empty_row():
    with pytest.raises(ValueError):
        neighborhood_probability([], 0.1)


def test_matrix_form_matches_rowwise(rng):
    X = rng.uniform(size=(12, 3))
    D = np.sqrt(((X[:, None] - X[None]) ** 2).sum(-1))
    D /= D.max()
    got = neighborhood_probabilities(D, 0.2)
    for i in range(12):
        assert got[i] == pytest.approx(neighborhood_probability(np.delete(D[i], i), 0.2), rel=1e-14)
    part = neighborhood_probabilities(D, 0.2, start=4, stop=9)
    assert np.array_equal(part, got[4:9])
