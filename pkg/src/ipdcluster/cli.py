"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 degenerate data.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

import numpy as np

from . import baselines, datagen
from .cluster import scan, sm_cluster
from .dataset import DataError, DegenerateDataError, HyperParams
from .distance import EUCLIDEAN, GEODESIC, GOWER, PRECOMPUTED, pairwise_matrix
from .io import (
    dump_json,
    load_csv,
    load_precomputed,
    load_schema,
    report_to_dict,
    scan_rows_to_dicts,
    write_assignments,
    write_csv,
)
from .validation import accuracy, asw, cluster_sizes

log = logging.getLogger("ipdcluster")

DISTANCES = {"euclidean": EUCLIDEAN, "gower": GOWER, "geodesic": GEODESIC, "precomputed": PRECOMPUTED}
MERGE_POLICIES = {"asw-guard": "asw_guard", "always": "always"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> List[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_input(p, distance=True):
    p.add_argument("--input", required=True, help="CSV data file (or square distance CSV for --distance precomputed)")
    p.add_argument("--schema", help="JSON column schema")
    p.add_argument("--labels-col", help="name of a ground-truth label column")
    if distance:
        p.add_argument("--distance", choices=sorted(DISTANCES), default="euclidean")


def _load(args):
    """Return (data or None, raw distance matrix)."""
    measure = DISTANCES[getattr(args, "distance", "euclidean")]
    if measure == PRECOMPUTED:
        return None, load_precomputed(args.input)
    schema = load_schema(args.schema) if args.schema else None
    data = load_csv(args.input, schema=schema, label_col=args.labels_col)
    return data, pairwise_matrix(data, measure, n_jobs=getattr(args, "threads", 1))


def _params(args) -> HyperParams:
    try:
        return HyperParams(args.h, args.n_prime, not args.no_renormalize_rounds, MERGE_POLICIES[args.merge_policy])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _plot_points(data, use_pca: bool):
    if data is None:
        raise UsageError("plots need coordinate data, not a precomputed matrix")
    if use_pca:
        from .pca import pca2

        return pca2(data)[0], ("PC1", "PC2")
    if data.p < 2:
        raise UsageError("plots need two columns; use --pca")
    names = data.column_names or ("x1", "x2")
    return data.values[:, :2], (names[0], names[1])


def cmd_cluster(args) -> int:
    data, D = _load(args)
    params = _params(args)
    report = sm_cluster(data, DISTANCES[args.distance], params, distances=D, n_jobs=args.threads)
    dump_json(report_to_dict(report), args.report)
    if args.assign:
        write_assignments(report.assignment, args.assign)
    if args.plot or args.figure:
        from .plotting import figure_scatter, render_svg_scatter

        pts, (xl, yl) = _plot_points(data, args.pca)
        title = f"h={params.h}, n'={params.n_prime}, K={report.K}"
        if args.plot:
            render_svg_scatter(pts, report.assignment, args.plot, title=title)
        if args.figure:
            figure_scatter(pts, report.assignment, args.figure, title=title, xlabel=xl, ylabel=yl)
    asw_txt = "NA" if report.asw is None else f"{report.asw:.5f}"
    print(f"K={report.K}\tASW={asw_txt}\tsizes={','.join(map(str, report.cluster_sizes))}")
    return 0


def cmd_scan(args) -> int:
    data, D = _load(args)
    rows, best = scan(
        data,
        DISTANCES[args.distance],
        args.h,
        args.n_prime,
        renormalize_each_round=not args.no_renormalize_rounds,
        merge_policy=MERGE_POLICIES[args.merge_policy],
        distances=D,
        n_jobs=args.threads,
    )
    table = scan_rows_to_dicts(rows)
    doc = {
        "algorithm": "sm_cluster_scan",
        "distance": DISTANCES[args.distance],
        "renormalize_each_round": not args.no_renormalize_rounds,
        "merge_policy": MERGE_POLICIES[args.merge_policy],
        "rows": table,
        "best": scan_rows_to_dicts([best])[0],
    }
    dump_json(doc, args.report)
    if args.figure:
        from .plotting import figure_scan

        figure_scan(rows, args.figure)
    print("h\tn_prime\tASW\tK_hat")
    for r in table:
        a = "NA" if r["asw"] is None else f"{r['asw']:.5f}"
        mark = "*" if (r["h"], r["n_prime"]) == (best.h, best.n_prime) else ""
        print(f"{r['h']}\t{r['n_prime']}\t{a}\t{r['K_hat']}{mark}")
    return 0


def cmd_gen(args) -> int:
    gens = {"s1": datagen.gen_s1, "s3": datagen.gen_s3, "s4": datagen.gen_s4}
    data = gens[args.dataset](args.seed)
    write_csv(data, args.out)
    return 0


def _score(assign, D, truth):
    out = {"K": int(len(set(assign))), "cluster_sizes": cluster_sizes(assign)}
    out["asw"] = None if out["K"] < 2 else round(asw(assign, D), 6)
    if truth is not None:
        out["accuracy"] = round(accuracy(assign, truth), 6)
    return out


def cmd_baseline(args) -> int:
    data, D = _load(args)
    truth = None if data is None else data.labels
    doc = {"algorithm": args.algo, "distance": DISTANCES[args.distance]}
    if args.algo in ("kmeans", "pam"):
        if not args.k:
            raise UsageError(f"--k is required for {args.algo}")
        if args.algo == "kmeans" and (data is None or args.distance != "euclidean"):
            raise UsageError("kmeans needs coordinate data with euclidean distance")
        runs = []
        for K in args.k:
            if args.algo == "kmeans":
                res = baselines.kmeans(data, K, seed=args.seed, restarts=args.restarts)
                extra = {"inertia": res.inertia, "centroids": res.centroids.tolist()}
            else:
                res = baselines.pam(D, K)
                extra = {"medoids": [m + 1 for m in res.medoids], "cost": res.cost}
            labels = list(res.assignment.labels)
            runs.append({"K_requested": K, **_score(labels, D, truth), "assignments": labels, **extra})
        scored = [r for r in runs if r["asw"] is not None]
        best = max(scored, key=lambda r: r["asw"]) if scored else runs[0]
        doc.update({"params": {"k": args.k, "restarts": args.restarts}, "seed": args.seed, "runs": runs})
        doc.update({k: best[k] for k in ("K", "cluster_sizes", "asw", "assignments")})
        if "accuracy" in best:
            doc["accuracy"] = best["accuracy"]
        final = best["assignments"]
    else:
        if args.eps is None or args.min_pts is None:
            raise UsageError("--eps and --min-pts are required for dbscan")
        res = baselines.dbscan(D, args.eps, args.min_pts)
        labels = list(res.labels)
        doc.update(
            {
                "params": {"eps": args.eps, "min_pts": args.min_pts, "noise_asw": args.noise},
                "K": res.n_clusters,
                "n_noise": res.n_noise,
                "cluster_sizes": res.cluster_sizes(),
                "asw": None if (a := baselines.dbscan_asw(res, D, args.noise)) is None else round(a, 6),
                "assignments": labels,
            }
        )
        if truth is not None:
            doc["accuracy"] = round(accuracy(labels, truth), 6)
        final = [v if v else res.n_clusters + 1 for v in labels]
    dump_json(doc, args.report)
    if args.plot or args.figure:
        from .plotting import figure_scatter, render_svg_scatter

        pts, (xl, yl) = _plot_points(data, args.pca)
        if args.plot:
            render_svg_scatter(pts, final, args.plot, title=args.algo)
        if args.figure:
            figure_scatter(pts, final, args.figure, title=args.algo, xlabel=xl, ylabel=yl)
    asw_txt = "NA" if doc["asw"] is None else f"{doc['asw']:.5f}"
    print(f"{args.algo}\tK={doc['K']}\tASW={asw_txt}")
    return 0


def cmd_knn_profile(args) -> int:
    _, D = _load(args)
    prof = baselines.knn_dist_profile(D, args.k)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("rank,knn_distance\n")
        for i, v in enumerate(prof, start=1):
            fh.write(f"{i},{float(v)!r}\n")
    if args.figure:
        from .plotting import figure_knn_profile

        figure_knn_profile(prof, args.figure, args.k, eps=args.eps)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ipdcluster", description="Interpoint-distance kernel density clustering")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common_cluster(p):
        _add_input(p)
        p.add_argument("--no-renormalize-rounds", action="store_true", help="keep the one-time global normalization")
        p.add_argument("--merge-policy", choices=sorted(MERGE_POLICIES), default="asw-guard")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("cluster", help="run the clustering for one (h, n') pair")
    common_cluster(p)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--n-prime", type=int, required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--assign", help="CSV of per-member cluster labels")
    p.add_argument("--plot", help="SVG scatter of the result")
    p.add_argument("--pca", action="store_true", help="plot the first two principal components")
    p.add_argument("--figure", help="matplotlib scatter (PNG/PDF by extension)")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("scan", help="grid scan over (h, n') scored by ASW")
    common_cluster(p)
    p.add_argument("--h", type=_floats, required=True)
    p.add_argument("--n-prime", type=_ints, required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--figure", help="matplotlib plot of ASW against h")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("gen", help="generate a synthetic benchmark")
    p.add_argument("--dataset", choices=("s1", "s3", "s4"), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("baseline", help="k-means, PAM or DBSCAN")
    p.add_argument("--algo", choices=("kmeans", "pam", "dbscan"), required=True)
    _add_input(p)
    p.add_argument("--k", type=_ints, help="number of clusters; a comma list scores each and keeps the best ASW")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float)
    p.add_argument("--min-pts", type=int)
    p.add_argument("--noise", choices=baselines.NOISE_MODES, default="exclude", help="noise treatment in DBSCAN ASW")
    p.add_argument("--report", required=True)
    p.add_argument("--plot")
    p.add_argument("--pca", action="store_true")
    p.add_argument("--figure")
    p.set_defaults(func=cmd_baseline, threads=1)

    p = sub.add_parser("knn-profile", help="sorted k-th nearest neighbor distances")
    _add_input(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--figure", help="matplotlib plot of the curve")
    p.add_argument("--eps", type=float, help="mark a candidate eps on the figure")
    p.set_defaults(func=cmd_knn_profile, threads=1)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DegenerateDataError as exc:
        print(f"degenerate data: {exc}", file=sys.stderr)
        return 3
    except (DataError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
