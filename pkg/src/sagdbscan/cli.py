"""Command-line front end: run the pipeline, benchmark it, generate datasets.

Exit codes: 0 success, 1 runtime failure (pipeline errors, benchmark
targets missed), 2 usage or configuration errors (bad flags, unreadable or
malformed input).
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .data import Dataset, generate_blobs, generate_shape_t, load_csv, write_dataset, write_result
from .errors import (
    IoError,
    MissingLabels,
    NonFiniteValue,
    ParseError,
    RaggedRows,
    SagDbscanError,
)
from .grey import grey_matrix
from .metrics import accuracy, ari, cluster_count, f_score, nmi
from .pipeline import run_sag_dbscan
from .plotting import plot_scatter

_CONFIG_ERRORS = (ParseError, NonFiniteValue, RaggedRows, IoError, MissingLabels)


def _add_pipeline_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", required=True, help="dataset CSV path")
    sub.add_argument("--labels-col", type=int, default=None,
                     help="0-based index of the ground-truth label column")
    sub.add_argument("--k", type=int, default=None, help="override density neighbor count")
    sub.add_argument("--m", type=int, default=None, help="override DBSCAN MinPts")
    sub.add_argument("--metric", choices=("euclidean", "grey"), default="euclidean",
                     help="distance for DBSCAN and remainder assignment")
    sub.add_argument("--normalize", action="store_true",
                     help="min-max scale features before clustering")
    sub.add_argument("--regression", choices=("ols", "l1"), default="ols",
                     help="segment fit used by the dense-subset split search")
    sub.add_argument("--output", default=None, help="assignments CSV path")
    sub.add_argument("--plot", default=None, help="write an SVG scatter (2-D data only)")
    sub.add_argument("--dump-grey", default=None, help="write the degree matrix as CSV")
    sub.add_argument("--dump-rho", default=None, help="write per-object density as CSV")
    sub.add_argument("--dump-residuals", default=None, help="write the split residual curve as CSV")
    sub.add_argument("--dump-dense", default=None, help="write the dense-subset mask as CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sagdbscan",
        description="Self-adaptive grey-relational DBSCAN clustering",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="cluster a CSV dataset")
    _add_pipeline_flags(run)

    bench = commands.add_parser("bench", help="cluster and score against ground truth")
    _add_pipeline_flags(bench)
    bench.add_argument("--metrics-out", default=None, help="write metric,value CSV")
    bench.add_argument("--expected", default=None,
                       help="CSV of metric,target,tolerance rows to check against")

    gen = commands.add_parser("generate", help="write a synthetic labeled dataset")
    kinds = gen.add_subparsers(dest="kind", required=True)

    shapet = kinds.add_parser("shapet", help="T-shaped cluster plus two discs")
    shapet.add_argument("--points", type=int, default=10000)
    shapet.add_argument("--noise-fraction", type=float, default=0.0)
    shapet.add_argument("--seed", type=int, default=0)
    shapet.add_argument("--output", default="shapet.csv")

    blobs = kinds.add_parser("blobs", help="Gaussian blobs on a circle of centers")
    blobs.add_argument("--centers", type=int, default=3, help="number of blob centers")
    blobs.add_argument("--per-center", type=int, default=100, help="points per blob")
    blobs.add_argument("--spread", type=float, default=1.0)
    blobs.add_argument("--dim", type=int, default=2)
    blobs.add_argument("--seed", type=int, default=0)
    blobs.add_argument("--output", default="blobs.csv")
    return parser


def _load(args) -> Dataset:
    path = Path(args.input)
    if not path.exists():
        raise IoError(f"file not found: {path}")
    return load_csv(path, label_column=args.labels_col)


def _write_dumps(args, report, dataset) -> None:
    if args.dump_grey:
        grey = report.grey if report.grey is not None else grey_matrix(dataset.data)
        np.savetxt(args.dump_grey, grey.values, delimiter=",", fmt="%.17g")
    if args.dump_rho:
        with open(args.dump_rho, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index", "rho"])
            for i, value in enumerate(report.profile.rho):
                writer.writerow([i, repr(float(value))])
    if args.dump_residuals:
        with open(args.dump_residuals, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["p", "R_p"])
            for p, value in sorted(report.split.residuals.items()):
                writer.writerow([p, repr(float(value))])
    if args.dump_dense:
        with open(args.dump_dense, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index", "member"])
            for i, member in enumerate(report.split.member_mask):
                writer.writerow([i, int(member)])


def _execute_pipeline(args, dataset):
    report = run_sag_dbscan(
        dataset,
        k=args.k,
        m=args.m,
        metric=args.metric,
        normalize=args.normalize,
        regression=args.regression,
        keep_grey=bool(args.dump_grey),
    )
    output = args.output or f"{Path(args.input).stem}_assignments.csv"
    write_result(report.clustering, output)
    _write_dumps(args, report, dataset)
    if args.plot:
        plot_scatter(dataset, report.clustering, args.plot)
    return report, output


def _print_report(report, output) -> None:
    print(f"clusters: {report.cluster_count}")
    print(f"dense subset: {report.dense_size} / {report.n}")
    print(f"k: {report.params.k}  m: {report.params.m}  eps: {report.dbscan.eps:.6g}  "
          f"metric: {report.dbscan.metric}")
    print(f"assignments written to {output}")
    for stage in ("grey_density", "dense_subset", "dbscan", "assignment", "total"):
        print(f"time {stage}: {report.timings[stage]:.3f}s")


def cmd_run(args) -> int:
    dataset = _load(args)
    report, output = _execute_pipeline(args, dataset)
    _print_report(report, output)
    return 0


def _read_expected(path) -> list[tuple[str, float, float]]:
    rows = []
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().lower() == "metric":
                    continue
                rows.append((row[0].strip(), float(row[1]), float(row[2])))
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except (IndexError, ValueError) as exc:
        raise ParseError(f"{path}: expected rows of metric,target,tolerance") from exc
    return rows


def cmd_bench(args) -> int:
    if args.labels_col is None:
        raise MissingLabels("bench needs --labels-col to locate ground truth")
    dataset = _load(args)
    if dataset.labels is None:
        raise MissingLabels("dataset has no labels")
    report, output = _execute_pipeline(args, dataset)

    scores = {
        "accuracy": accuracy(report.clustering, dataset.labels),
        "f_score": f_score(report.clustering, dataset.labels),
        "ari": ari(report.clustering, dataset.labels),
        "nmi": nmi(report.clustering, dataset.labels),
        "clusters": float(cluster_count(report.clustering)),
    }
    _print_report(report, output)
    for name in ("accuracy", "f_score", "ari", "nmi"):
        print(f"{name}: {scores[name]:.4f}")

    if args.metrics_out:
        with open(args.metrics_out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["metric", "value"])
            for name, value in scores.items():
                writer.writerow([name, repr(value)])

    if args.expected:
        failures = []
        for name, target, tolerance in _read_expected(args.expected):
            if name not in scores:
                failures.append(f"{name}: unknown metric")
                continue
            diff = abs(scores[name] - target)
            status = "ok" if diff <= tolerance else "OUT OF TOLERANCE"
            print(f"expected {name}={target} +/-{tolerance}: got {scores[name]:.4f} "
                  f"(diff {diff:.4f}) {status}")
            if diff > tolerance:
                failures.append(f"{name}: |{scores[name]:.4f} - {target}| > {tolerance}")
        if failures:
            print("benchmark targets missed:", "; ".join(failures), file=sys.stderr)
            return 1
    return 0


def cmd_generate(args) -> int:
    if args.kind == "shapet":
        dataset = generate_shape_t(args.points, args.noise_fraction, args.seed)
    else:
        count = args.centers
        if count < 1:
            raise ParseError("--centers must be >= 1")
        centers = np.zeros((count, args.dim))
        if args.dim == 1:
            centers[:, 0] = 12.0 * args.spread * np.arange(count)
        elif count > 1:
            radius = 6.0 * args.spread * count / np.pi
            angles = 2.0 * np.pi * np.arange(count) / count
            centers[:, 0] = radius * np.cos(angles)
            centers[:, 1] = radius * np.sin(angles)
        dataset = generate_blobs(centers, args.per_center, args.spread, args.seed)
    write_dataset(dataset, args.output)
    print(f"wrote {dataset.n} x {dataset.n_features} dataset "
          f"({np.unique(dataset.labels).size} labels) to {args.output}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"run": cmd_run, "bench": cmd_bench, "generate": cmd_generate}
    try:
        return handlers[args.command](args)
    except _CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SagDbscanError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
