"""CSV and JSON ingestion/emission for data, schemas, distance matrices and reports."""

from __future__ import annotations

import csv
import json
import math
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .dataset import (
    COLUMN_KINDS,
    ClusterAssignment,
    ClusterReport,
    DataError,
    DataMatrix,
    DistanceMatrix,
    HyperParams,
    RoundTrace,
    VariableSchema,
)
from .distance import from_square

PathLike = Union[str, Path]
ASW_DECIMALS = 6


def load_schema(path: PathLike) -> Dict[str, str]:
    """Read ``{"columns": [{"name": ..., "type": ...}]}`` into an ordered name -> kind map."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        cols = doc["columns"]
        out = {}
        for col in cols:
            kind = col["type"]
            if kind not in COLUMN_KINDS:
                raise DataError(f"schema column {col['name']!r}: unknown type {kind!r}")
            out[str(col["name"])] = kind
    except (KeyError, TypeError) as exc:
        raise DataError(f"malformed schema file {path}: {exc}") from None
    return out


def _parse_cell(text: str, row: int, col: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DataError(f"unparseable cell {text!r} at row {row}, column {col}") from None
    return value


def load_csv(
    path: PathLike,
    schema: Optional[Dict[str, str]] = None,
    label_col: Optional[str] = None,
    header: bool = True,
) -> DataMatrix:
    """Load a comma-separated numeric table.

    Row and column numbers in error messages are 1-based and count the
    header line as row 1.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise DataError(f"{path} is empty")
    if header:
        names = [c.strip() for c in rows[0]]
        body = rows[1:]
        first_line = 2
    else:
        names = [f"x{i + 1}" for i in range(len(rows[0]))]
        body = rows
        first_line = 1
    if not body:
        raise DataError(f"{path} has no data rows")
    width = len(names)
    for i, r in enumerate(body):
        if len(r) != width:
            raise DataError(f"ragged row {first_line + i}: expected {width} fields, found {len(r)}")
    if label_col is not None and label_col not in names:
        raise DataError(f"label column {label_col!r} not found among {names}")

    data_idx = [j for j, nm in enumerate(names) if nm != label_col]
    values = np.array(
        [[_parse_cell(r[j].strip(), first_line + i, j + 1) for j in data_idx] for i, r in enumerate(body)]
    )
    labels = None
    if label_col is not None:
        j = names.index(label_col)
        raw = [_parse_cell(r[j].strip(), first_line + i, j + 1) for i, r in enumerate(body)]
        if any(v != int(v) for v in raw):
            raise DataError(f"label column {label_col!r} must hold integers")
        labels = np.array(raw, dtype=int)

    col_names = [names[j] for j in data_idx]
    if schema is None:
        kinds = VariableSchema.all_continuous(len(col_names))
    else:
        missing = [nm for nm in col_names if nm not in schema]
        if missing:
            raise DataError(f"schema has no entry for columns {missing}")
        kinds = VariableSchema(tuple(schema[nm] for nm in col_names))
    return DataMatrix(values, kinds, labels, tuple(col_names))


def _fmt(v: float) -> str:
    return repr(float(v)) if math.isfinite(v) else str(v)


def write_csv(data: DataMatrix, path: PathLike, label_col: str = "label") -> None:
    """Write *data* with a header; a label column is appended when labels exist."""
    names = list(data.column_names or [f"x{i + 1}" for i in range(data.p)])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names + ([label_col] if data.labels is not None else []))
        for i, row in enumerate(data.values):
            cells = [_fmt(v) for v in row]
            if data.labels is not None:
                cells.append(str(int(data.labels[i])))
            w.writerow(cells)


def load_precomputed(path: PathLike) -> DistanceMatrix:
    """Square numeric CSV without header; row i holds distances from member i."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise DataError(f"ragged row {i + 1} in distance file")
    M = [[_parse_cell(c.strip(), i + 1, j + 1) for j, c in enumerate(r)] for i, r in enumerate(rows)]
    return from_square(M)


def write_assignments(assignment: ClusterAssignment, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("index,cluster\n")
        for i, v in enumerate(assignment.labels, start=1):
            fh.write(f"{i},{v}\n")


def _round(v: Optional[float], digits: int = ASW_DECIMALS) -> Optional[float]:
    return None if v is None else round(float(v), digits)


def report_to_dict(report: ClusterReport, seed: Optional[int] = None) -> Dict[str, Any]:
    """JSON-ready form of a report. Member indices in ``rounds`` are 1-based."""
    p = report.params
    doc: Dict[str, Any] = {
        "algorithm": "sm_cluster",
        "distance": report.distance,
        "params": {
            "h": p.h,
            "n_prime": p.n_prime,
            "renormalize_each_round": p.renormalize_each_round,
            "merge_policy": p.merge_policy,
        },
        "K": report.K,
        "cluster_sizes": list(report.cluster_sizes),
        "asw": _round(report.asw),
    }
    if "accuracy" in report.extras:
        doc["accuracy"] = _round(report.extras["accuracy"])
    doc["assignments"] = list(report.assignment.labels)
    doc["rounds"] = [
        {"densest": t.densest_member + 1, "extracted": [i + 1 for i in t.extracted]} for t in report.rounds
    ]
    doc["merged"] = report.merged
    doc["pre_merge_assignments"] = list(report.pre_merge_assignment.labels)
    doc["pre_merge_asw"] = _round(report.pre_merge_asw)
    doc["merged_asw"] = _round(report.merged_asw)
    if seed is not None:
        doc["seed"] = seed
    return doc


def dict_to_report(doc: Dict[str, Any]) -> ClusterReport:
    p = doc["params"]
    params = HyperParams(p["h"], p["n_prime"], p["renormalize_each_round"], p["merge_policy"])
    rounds = tuple(
        RoundTrace(k + 1, r["densest"] - 1, tuple(i - 1 for i in r["extracted"]), None)
        for k, r in enumerate(doc["rounds"])
    )
    assignment = ClusterAssignment(tuple(doc["assignments"]))
    pre = ClusterAssignment(tuple(doc.get("pre_merge_assignments", doc["assignments"])))
    extras = {"accuracy": doc["accuracy"]} if "accuracy" in doc else {}
    return ClusterReport(
        params=params,
        assignment=assignment,
        cluster_sizes=tuple(doc["cluster_sizes"]),
        asw=doc["asw"],
        rounds=rounds,
        merged=doc["merged"],
        pre_merge_assignment=pre,
        pre_merge_asw=doc.get("pre_merge_asw"),
        merged_asw=doc.get("merged_asw"),
        distance=doc["distance"],
        extras=extras,
    )


def dump_json(doc: Dict[str, Any], path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def write_report(report: ClusterReport, path: PathLike, seed: Optional[int] = None) -> None:
    dump_json(report_to_dict(report, seed), path)


def read_report(path: PathLike) -> ClusterReport:
    with open(path, encoding="utf-8") as fh:
        return dict_to_report(json.load(fh))


def report_schema() -> Dict[str, Any]:
    """The JSON schema that cluster report files conform to."""
    text = resources.files("ipdcluster").joinpath("data/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def load_ruspini() -> DataMatrix:
    """The 75-point Ruspini benchmark with its four reference classes."""
    with resources.as_file(resources.files("ipdcluster").joinpath("data/ruspini.csv")) as p:
        return load_csv(p, label_col="label")


def scan_rows_to_dicts(rows: Sequence[Any]) -> List[Dict[str, Any]]:
    out = []
    for r in rows:
        d = {"h": r.h, "n_prime": r.n_prime, "asw": _round(r.asw), "K_hat": r.K_hat, "cluster_sizes": list(r.cluster_sizes)}
        if r.accuracy is not None:
            d["accuracy"] = _round(r.accuracy)
        out.append(d)
    return out
