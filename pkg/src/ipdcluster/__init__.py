"""Nonparametric clustering from interpoint distances via kernel density estimation."""

from .cluster import ScanRow, densest_member, extract_cluster, merge_small_clusters, run_rounds, scan, sm_cluster
from .dataset import (
    ClusterAssignment,
    ClusterReport,
    DataError,
    DataMatrix,
    DegenerateDataError,
    DistanceMatrix,
    HyperParams,
    VariableSchema,
    column_ranges,
    validate,
)
from .distance import euclidean, geodesic_sphere, gower, normalize_matrix, pairwise_matrix
from .io import load_csv, load_ruspini, read_report, write_csv, write_report
from .validation import accuracy, asw, cluster_sizes, silhouette_widths

__all__ = [
    "ClusterAssignment",
    "ClusterReport",
    "DataError",
    "DataMatrix",
    "DegenerateDataError",
    "DistanceMatrix",
    "HyperParams",
    "ScanRow",
    "VariableSchema",
    "accuracy",
    "asw",
    "cluster_sizes",
    "column_ranges",
    "densest_member",
    "euclidean",
    "extract_cluster",
    "geodesic_sphere",
    "gower",
    "load_csv",
    "load_ruspini",
    "merge_small_clusters",
    "normalize_matrix",
    "pairwise_matrix",
    "read_report",
    "run_rounds",
    "scan",
    "silhouette_widths",
    "sm_cluster",
    "validate",
    "write_csv",
    "write_report",
]
