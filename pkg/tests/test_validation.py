import numpy as np
import pytest

from ipdcluster.dataset import ClusterAssignment
from ipdcluster.validation import UndefinedASWError, accuracy, asw, cluster_sizes, silhouette_widths
from oracles import brute_silhouette

LINE = np.abs(np.subtract.outer([0.0, 1.0, 10.0, 11.0], [0.0, 1.0, 10.0, 11.0]))


def test_line_example():
    prof = silhouette_widths([1, 1, 2, 2], LINE)
    assert prof.asw == pytest.approx(0.8997494, abs=5e-8)
    assert prof.widths == pytest.approx([0.9047619, 0.8947368, 0.8947368, 0.9047619], abs=5e-8)
    assert prof.asw == pytest.approx(np.mean(brute_silhouette([1, 1, 2, 2], LINE)), abs=1e-15)


def test_two_singletons_score_zero():
    assert asw([1, 2], [[0, 3], [3, 0]]) == 0.0


def test_single_cluster_undefined():
    with pytest.raises(UndefinedASWError):
        asw([1, 1, 1], np.ones((3, 3)) - np.eye(3))


def test_scaling_by_seven(example_D):
    labels = [2, 2, 2, 2, 1, 1, 1, 1, 1, 3, 3, 4]
    assert asw(labels, example_D.entries * 7) == pytest.approx(asw(labels, example_D), abs=1e-12)


def test_worked_example_asw_from_printed_coordinates(example_D):
    # The printed two-decimal coordinates give these values (brute-force oracle agrees).
    pre = [2, 2, 2, 2, 1, 1, 1, 1, 1, 3, 3, 4]
    merged = [2, 2, 2, 2, 1, 1, 1, 1, 1, 3, 3, 3]
    assert asw(pre, example_D) == pytest.approx(np.mean(brute_silhouette(pre, example_D.entries)), abs=1e-12)
    assert asw(pre, example_D) == pytest.approx(0.7699848, abs=5e-8)
    assert asw(merged, example_D) == pytest.approx(0.7607214, abs=5e-8)


@pytest.mark.xfail(strict=True, reason="target value not reproducible from the two-decimal coordinates")
def test_worked_example_target_asw(example_D):
    assert asw([2, 2, 2, 2, 1, 1, 1, 1, 1, 3, 3, 4], example_D) == pytest.approx(0.76723, abs=5e-6)


@pytest.mark.xfail(strict=True, reason="target value not reproducible from the two-decimal coordinates")
def test_worked_example_target_merged_asw(example_D):
    assert asw([2, 2, 2, 2, 1, 1, 1, 1, 1, 3, 3, 3], example_D) == pytest.approx(0.75934, abs=5e-6)


def test_ruspini_truth_asw(ruspini, ruspini_D):
    assert asw(ruspini.labels, ruspini_D) == pytest.approx(0.73766, abs=1e-5)


def test_accuracy_examples():
    assert accuracy([1, 1, 2, 2], [1, 1, 2, 2]) == 100.0
    assert accuracy([1, 2, 2, 2], [1, 1, 2, 2]) == 75.0
    assert accuracy([2, 2, 1, 1], [1, 1, 2, 2]) == 100.0


def test_accuracy_extra_predicted_clusters_count_as_errors():
    assert accuracy([1, 1, 2, 3], [1, 1, 2, 2]) == 75.0


def test_accuracy_many_classes_uses_assignment_solver(rng):
    truth = np.repeat(np.arange(1, 13), 5)
    perm = rng.permutation(12) + 1
    pred = perm[truth - 1]
    assert accuracy(pred, truth) == 100.0
    pred = pred.copy()
    pred[0] = pred[-1]
    assert accuracy(pred, truth) == pytest.approx(100 * 59 / 60)


def test_accuracy_length_mismatch():
    with pytest.raises(ValueError):
        accuracy([1, 2], [1])


def test_cluster_sizes_examples():
    assert cluster_sizes(ClusterAssignment((2, 2, 2, 2, 1, 1, 1, 1, 1, 3, 3, 4))) == [5, 4, 2, 1]
    assert cluster_sizes([1] * 6) == [6]
    assert cluster_sizes([1, 2]) == [1, 1]


def test_widths_bounded_and_cluster_means(rng):
    X = rng.normal(size=(30, 2))
    D = np.sqrt(((X[:, None] - X[None]) ** 2).sum(-1))
    labels = rng.integers(1, 4, 30)
    prof = silhouette_widths(labels, D)
    assert np.all(prof.widths >= -1) and np.all(prof.widths <= 1)
    assert prof.asw == pytest.approx(prof.widths.mean(), abs=0)
