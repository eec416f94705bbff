"""Shared data representations: observations, schemas, distances, parameters, reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

CONTINUOUS = "continuous"
BINARY = "binary"
CATEGORICAL = "categorical"
COLUMN_KINDS = (CONTINUOUS, BINARY, CATEGORICAL)

MERGE_ALWAYS = "always"
MERGE_ASW_GUARD = "asw_guard"


class DataError(ValueError):
    """Input data violate a schema or shape invariant."""


class DegenerateDataError(DataError):
    """All members coincide, so the data form a single cluster."""


@dataclass(frozen=True)
class VariableSchema:
    kinds: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(self.kinds))
        for k in self.kinds:
            if k not in COLUMN_KINDS:
                raise DataError(f"unknown column kind {k!r}")

    @classmethod
    def all_continuous(cls, p: int) -> "VariableSchema":
        return cls((CONTINUOUS,) * p)

    def __len__(self) -> int:
        return len(self.kinds)


@dataclass(frozen=True)
class DataMatrix:
    """n x p observations with a per-column schema and optional class labels.

    The value array is copied and marked read-only on construction. Use
    :func:`validate` to check the invariants; construction itself only
    coerces shapes.
    """

    values: np.ndarray
    schema: VariableSchema
    labels: Optional[np.ndarray] = None
    column_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.labels is not None:
            labels = np.array(self.labels, dtype=int).reshape(-1)
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)
        if self.column_names is not None:
            object.__setattr__(self, "column_names", tuple(self.column_names))

    @classmethod
    def from_array(cls, values, labels=None, schema: Optional[VariableSchema] = None):
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if schema is None:
            schema = VariableSchema.all_continuous(values.shape[1])
        return cls(values, schema, labels)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class DistanceMatrix:
    entries: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def max(self) -> float:
        return float(self.entries.max()) if self.entries.size else 0.0

    def scaled(self, c: float) -> "DistanceMatrix":
        return DistanceMatrix(self.entries * c, normalized=False)


@dataclass(frozen=True)
class HyperParams:
    h: float
    n_prime: int
    renormalize_each_round: bool = True
    merge_policy: str = MERGE_ASW_GUARD

    def __post_init__(self):
        if not 0.0 < self.h < 1.0:
            raise ValueError(f"h must lie in (0, 1), got {self.h}")
        if int(self.n_prime) != self.n_prime or self.n_prime < 1:
            raise ValueError(f"n_prime must be a positive integer, got {self.n_prime}")
        if self.merge_policy not in (MERGE_ALWAYS, MERGE_ASW_GUARD):
            raise ValueError(f"unknown merge policy {self.merge_policy!r}")


@dataclass(frozen=True)
class ClusterAssignment:
    """Exhaustive, mutually exclusive labels 1..K, one per observation."""

    labels: Tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        distinct = set(labels)
        if labels and distinct != set(range(1, len(distinct) + 1)):
            raise ValueError(f"labels must be contiguous 1..K, got {sorted(distinct)}")

    @classmethod
    def compact(cls, raw: Sequence[int]) -> "ClusterAssignment":
        """Relabel arbitrary integer labels to 1..K, keeping their sorted order."""
        order = {v: i + 1 for i, v in enumerate(sorted(set(int(x) for x in raw)))}
        return cls(tuple(order[int(x)] for x in raw))

    @property
    def K(self) -> int:
        return len(set(self.labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=int)

    def members(self, label: int) -> List[int]:
        return [i for i, v in enumerate(self.labels) if v == label]


@dataclass(frozen=True)
class RoundTrace:
    round_index: int
    densest_member: int
    extracted: Tuple[int, ...]
    renormalization_max: float


@dataclass(frozen=True)
class ClusterReport:
    params: HyperParams
    assignment: ClusterAssignment
    cluster_sizes: Tuple[int, ...]
    asw: Optional[float]
    rounds: Tuple[RoundTrace, ...]
    merged: bool
    pre_merge_assignment: ClusterAssignment
    pre_merge_asw: Optional[float] = None
    merged_asw: Optional[float] = None
    distance: str = "euclidean"
    extras: dict = field(default_factory=dict)

    @property
    def K(self) -> int:
        return self.assignment.K


def column_ranges(data: DataMatrix) -> List[Tuple[float, float]]:
    """Per-column (min, max) pairs."""
    if data.n < 1:
        raise DataError("column_ranges needs at least one row")
    lo = data.values.min(axis=0)
    hi = data.values.max(axis=0)
    return [(float(a), float(b)) for a, b in zip(lo, hi)]


def validate(data: DataMatrix) -> Optional[str]:
    """Return ``None`` when *data* is well formed, else a description of the first violation."""
    values = data.values
    if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
        return f"data must be a non-empty 2-D matrix, got shape {values.shape}"
    n, p = values.shape
    if len(data.schema) != p:
        return f"schema length {len(data.schema)} does not match {p} columns"
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        r, c = bad[0]
        return f"non-finite entry at row {r}, column {c}"
    for c, kind in enumerate(data.schema.kinds):
        if kind == BINARY:
            off = np.flatnonzero((values[:, c] != 0) & (values[:, c] != 1))
            if off.size:
                r = off[0]
                return f"binary column {c} has value {values[r, c]!r} at row {r}"
    if data.labels is not None and len(data.labels) != n:
        return f"label length {len(data.labels)} does not match {n} rows"
    return None


def check(data: DataMatrix) -> DataMatrix:
    """Raise :class:`DataError` unless *data* validates."""
    problem = validate(data)
    if problem is not None:
        raise DataError(problem)
    return data


# The 12-point bivariate illustration used throughout the tests and the README.
WORKED_EXAMPLE = np.array(
    [
        [-0.30, -0.28],
        [-0.22, -0.25],
        [-0.27, -0.28],
        [-0.24, -0.27],
        [-0.03, 0.00],
        [0.05, 0.00],
        [-0.03, 0.05],
        [0.04, 0.03],
        [-0.02, -0.03],
        [0.23, 0.25],
        [0.25, 0.23],
        [0.45, 0.45],
    ]
)


def worked_example() -> DataMatrix:
    return DataMatrix.from_array(WORKED_EXAMPLE)
