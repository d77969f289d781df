"""Command-line entry point: ``ksplits {run,kmeans,generate,ari,bench}``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

import argparse
import json
import logging
import os
import sys
import time

from . import bench, presets
from .data import (
    ClusterSpec,
    LabeledDataset,
    SyntheticSpec,
    generate_mixture,
    load_labels,
    load_matrix,
    save_labels,
    save_matrix,
    save_result,
)
from .kmeans import KMeansConfig
from .metrics import adjusted_rand_index
from .numerics import pca_fit_transform
from .splitting import KSplitsConfig, ksplits_run

log = logging.getLogger("ksplits")

BETA_PRESETS = """\
beta presets by kind of data:
  0.01  sparse, well separated data (Dim, G2, Birch, Unbalance)
  0.1   medium density and overlap (A, S)
  0.95  very dense data after PCA (MNIST, Fashion-MNIST)
Smaller beta gives more clusters; dense data wants a larger beta."""


class UsageError(Exception):
    pass


def _bool(text):
    val = text.strip().lower()
    if val in ("1", "true", "yes", "on"):
        return True
    if val in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def _default_seed():
    env = os.environ.get("KSPLITS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"KSPLITS_SEED must be an integer, got {env!r}") from None


def _load_input(args):
    data = load_matrix(args.input, args.format)
    truth = load_labels(args.truth) if args.truth else None
    if truth is not None and len(truth) != len(data):
        raise ValueError(f"truth has {len(truth)} labels but the input has {len(data)} points")
    name = os.path.basename(args.input)
    return LabeledDataset(data, truth, name=name)


def _report(fields):
    print(" ".join(f"{k}={v}" for k, v in fields.items()))


def cmd_run(args):
    if not (0.0 < args.beta < 1.0):
        raise UsageError(f"--beta must lie in the open interval (0, 1), got {args.beta}")
    if args.initial_k < 1:
        raise UsageError("--initial-k must be a positive integer")
    if args.pca_variance is not None and not (0.0 < args.pca_variance <= 1.0):
        raise UsageError("--pca-variance must lie in (0, 1]")
    ds = _load_input(args)
    data = ds.data
    if args.pca_variance is not None:
        proj, data = pca_fit_transform(data, args.pca_variance)
        log.info("PCA kept %d of %d dimensions (%.4f of variance)",
                 proj.n_components, ds.data.shape[1], proj.explained_fraction)
    config = KSplitsConfig(
        beta=args.beta,
        initial_k=args.initial_k,
        use_jk_selection=args.jk_select,
        fine_tune=args.fine_tune,
        seed=args.seed,
    )
    result = ksplits_run(data, config)
    if args.output:
        save_result(result, args.output, include_timing=args.timing)
    report = {"dataset": ds.name, "algorithm": "fine-tuned-k-splits" if args.fine_tune else "k-splits",
              "detected_k": result.final_k}
    if ds.truth is not None:
        report["ari"] = f"{adjusted_rand_index(ds.truth, result.labels):.6f}"
    report["time_s"] = f"{result.wall_time:.4f}"
    report["beta"] = args.beta
    report["stop"] = result.stop_reason
    _report(report)
    return 0


def cmd_kmeans(args):
    if args.k < 1:
        raise UsageError("--k must be a positive integer")
    if args.repeats < 1:
        raise UsageError("--repeats must be a positive integer")
    ds = _load_input(args)
    best, best_seed, total = bench.best_of_kmeans(ds.data, args.k, args.repeats, args.seed)
    if args.output:
        doc = {
            "k": args.k,
            "repeats": args.repeats,
            "best_seed": best_seed,
            "sse": best.sse,
            "iterations": best.iterations,
            "centroids": best.centroids.tolist(),
            "labels": best.labels.tolist(),
            "config": {"k": args.k, "repeats": args.repeats, "seed": args.seed,
                       "max_iterations": KMeansConfig(k=args.k).max_iterations},
        }
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc) + "\n")
        save_labels(best.labels, args.output + ".labels")
    report = {"dataset": ds.name, "algorithm": f"{args.repeats}R-k-means", "detected_k": args.k}
    if ds.truth is not None:
        report["ari"] = f"{adjusted_rand_index(ds.truth, best.labels):.6f}"
    report["time_s"] = f"{total:.4f}"
    report["sse"] = f"{best.sse:.6g}"
    report["best_seed"] = best_seed
    _report(report)
    return 0


def cmd_generate(args):
    if args.clusters < 1 or args.n < args.clusters or args.dim < 1 or args.std <= 0:
        raise UsageError("need --clusters >= 1, --n >= --clusters, --dim >= 1 and --std > 0")
    if args.arrangement == "grid":
        spacing = args.spacing if args.spacing is not None else 10.0 * args.std
        means = presets.grid_means(args.clusters, args.dim, spacing)
    else:
        min_sep = args.min_sep if args.min_sep is not None else 5.0 * args.std
        means = presets.random_means(args.clusters, args.dim, args.box, min_sep, args.seed)
    counts = presets.split_counts(args.n, args.clusters)
    spec = SyntheticSpec(
        clusters=[ClusterSpec(n, list(m), args.std) for n, m in zip(counts, means)],
        dim=args.dim,
        seed=args.seed,
        n_points=args.n,
    )
    ds = generate_mixture(spec)
    data_path = args.output_prefix + ".txt"
    labels_path = args.output_prefix + "-labels.txt"
    save_matrix(ds.data, data_path)
    save_labels(ds.truth, labels_path)
    print(f"wrote {data_path} ({args.n} points, {args.dim} dims) and {labels_path} ({args.clusters} clusters)")
    return 0


def cmd_ari(args):
    a = load_labels(args.labels_a)
    b = load_labels(args.labels_b)
    if len(a) != len(b):
        raise ValueError(f"label files differ in length: {len(a)} vs {len(b)}")
    print(f"{adjusted_rand_index(a, b):.6f}")
    return 0


def cmd_bench(args):
    start = time.perf_counter()
    rows = bench.run_suite(args.suite, seed=args.seed, data_dir=args.data_dir, folds=args.folds)
    bench.write_csv(rows, args.output)
    print(f"wrote {len(rows)} rows to {args.output} in {time.perf_counter() - start:.1f}s")
    return 0


def build_parser():
    seed_default = _default_seed()
    parser = argparse.ArgumentParser(prog="ksplits", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def input_flags(p):
        p.add_argument("--input", required=True, help="whitespace or comma separated matrix, one point per line")
        p.add_argument("--format", choices=("auto", "whitespace", "csv"), default="auto")
        p.add_argument("--truth", help="ground-truth labels, one integer per line")
        p.add_argument("--seed", type=int, default=seed_default)
        p.add_argument("--output", help="result file (JSON); labels go to OUTPUT.labels")

    run = sub.add_parser("run", help="cluster with k-splits", epilog=BETA_PRESETS,
                         formatter_class=argparse.RawDescriptionHelpFormatter)
    input_flags(run)
    run.add_argument("--beta", type=float, default=0.1, help="stop ratio threshold in (0, 1), default 0.1")
    run.add_argument("--initial-k", type=int, default=1)
    run.add_argument("--fine-tune", type=_bool, default=True, metavar="BOOL")
    run.add_argument("--jk-select", type=_bool, default=True, metavar="BOOL",
                     help="return the iteration with the best density score; turn off for dense or heavily overlapped data")
    run.add_argument("--pca-variance", type=float, help="reduce with PCA to this explained-variance fraction first")
    run.add_argument("--timing", action="store_true",
                     help="record wall time in the result file (makes reruns differ)")
    run.set_defaults(func=cmd_run)

    km = sub.add_parser("kmeans", help="best-of-R random-init k-means baseline")
    input_flags(km)
    km.add_argument("--k", type=int, required=True)
    km.add_argument("--repeats", type=int, default=10)
    km.set_defaults(func=cmd_kmeans)

    gen = sub.add_parser("generate", help="write a synthetic Gaussian mixture and its labels")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--clusters", type=int, required=True)
    gen.add_argument("--dim", type=int, default=2)
    gen.add_argument("--std", type=float, default=1.0)
    gen.add_argument("--arrangement", choices=("grid", "random-means"), default="random-means")
    gen.add_argument("--box", type=float, default=100.0, help="side of the box for random means")
    gen.add_argument("--min-sep", type=float, help="minimum distance between random means (default 5*std)")
    gen.add_argument("--spacing", type=float, help="grid spacing (default 10*std)")
    gen.add_argument("--seed", type=int, default=seed_default)
    gen.add_argument("--output-prefix", required=True)
    gen.set_defaults(func=cmd_generate)

    ari = sub.add_parser("ari", help="adjusted Rand index between two label files")
    ari.add_argument("labels_a")
    ari.add_argument("labels_b")
    ari.set_defaults(func=cmd_ari)

    b = sub.add_parser("bench", help="run a benchmark suite and write CSV")
    b.add_argument("--suite", choices=bench.SUITES, required=True)
    b.add_argument("--output", required=True)
    b.add_argument("--seed", type=int, default=seed_default)
    b.add_argument("--folds", type=int, default=1, help="datasets per sweep point")
    b.add_argument("--data-dir", help="directory with the original benchmark files")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    try:
        parser = build_parser()
    except UsageError as exc:
        print(f"ksplits: error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ksplits: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"ksplits: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
