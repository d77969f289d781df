"""Benchmark suites producing Table-I style CSV rows.

Columns (stable, plot scripts depend on them):
    dataset, N, C, dim, algorithm, detected_k, ari, time_s

Algorithms reported: ``k-splits`` (raw hierarchy), ``fine-tuned-k-splits``
and ``10R-k-means`` (best of ten random-init runs by SSE, with the known C;
time is the total over all repeats).
"""

import csv
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import presets
from ._rng import derive_seed
from .data import LabeledDataset, load_labels, load_matrix
from .kmeans import KMeansConfig, kmeans_run
from .metrics import adjusted_rand_index
from .splitting import KSplitsConfig, fine_tune, ksplits_run

CSV_COLUMNS = ["dataset", "N", "C", "dim", "algorithm", "detected_k", "ari", "time_s"]
SUITES = ("table1-desk", "sweep-n", "sweep-c", "sweep-dim")

SWEEP_N = (500, 1000, 2000, 5000, 10_000, 20_000, 30_000)
SWEEP_C = (2, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50)
SWEEP_DIM = (2, 3, 5, 10, 20, 50, 100)

# (beta, use J_k selection) per desk dataset
TABLE1_SETTINGS = {
    "A1-like": (0.1, True),
    "S1-like": (0.1, True),
    "Dim32-like": (0.1, True),
    "G2-2-10-like": (0.1, True),
    "G2-128-10-like": (0.1, True),
    "Unbalance-like": (0.01, False),
}

# original benchmark files: name -> (data file, candidate truth files, beta, jk selection)
ORIGINAL_FILES = {
    "A1": ("a1.txt", ("a1-ga.pa", "a1.pa", "a1-labels.txt"), 0.1, True),
    "S1": ("s1.txt", ("s1-label.pa", "s1.pa", "s1-labels.txt"), 0.1, True),
    "Dim32": ("dim032.txt", ("dim032.pa", "dim032-labels.txt"), 0.01, True),
    "Unbalance": ("unbalance.txt", ("unbalance-gt.pa", "unbalance.pa", "unbalance-labels.txt"), 0.01, False),
}


@dataclass
class BenchRow:
    dataset: str
    N: int
    C: int
    dim: int
    algorithm: str
    detected_k: int
    ari: float
    time_s: Optional[float]

    def as_csv(self):
        return [
            self.dataset,
            self.N,
            self.C,
            self.dim,
            self.algorithm,
            self.detected_k,
            f"{self.ari:.6f}",
            "" if self.time_s is None else f"{self.time_s:.6f}",
        ]


def best_of_kmeans(data, k, repeats=10, seed=0):
    """Run random-init k-means `repeats` times (seeds seed..seed+repeats-1),
    keep the lowest-SSE run. Returns (best result, best seed, total seconds)."""
    best = None
    best_seed = None
    total = 0.0
    for s in range(seed, seed + repeats):
        start = time.perf_counter()
        res = kmeans_run(data, KMeansConfig(k=k, seed=s))
        total += time.perf_counter() - start
        if best is None or res.sse < best.sse:
            best, best_seed = res, s
    return best, best_seed, total


def ksplits_rows(ds: LabeledDataset, beta, use_jk=True, tag=None):
    """Raw and fine-tuned k-splits rows, timed separately."""
    n, dim = ds.data.shape
    c = ds.n_clusters
    name = tag or ds.name
    res = ksplits_run(ds.data, KSplitsConfig(beta=beta, use_jk_selection=use_jk, fine_tune=False))
    start = time.perf_counter()
    tuned = fine_tune(ds.data, res.centroids)
    tune_time = time.perf_counter() - start
    return [
        BenchRow(name, n, c, dim, "k-splits", res.final_k,
                 adjusted_rand_index(ds.truth, res.labels), res.wall_time),
        BenchRow(name, n, c, dim, "fine-tuned-k-splits", len(tuned.centroids),
                 adjusted_rand_index(ds.truth, tuned.labels), res.wall_time + tune_time),
    ]


def kmeans_rows(ds: LabeledDataset, repeats=10, seed=0, tag=None):
    n, dim = ds.data.shape
    c = ds.n_clusters
    best, _, total = best_of_kmeans(ds.data, c, repeats, seed)
    return [BenchRow(tag or ds.name, n, c, dim, f"{repeats}R-k-means", c,
                     adjusted_rand_index(ds.truth, best.labels), total)]


def load_original(data_dir, name):
    data_file, truth_files, _, _ = ORIGINAL_FILES[name]
    root = Path(data_dir)
    if not (root / data_file).exists():
        return None
    truth = None
    for cand in truth_files:
        if (root / cand).exists():
            truth = load_labels(root / cand)
            break
    if truth is None:
        return None
    return LabeledDataset(load_matrix(root / data_file), truth, name=f"{name} (original)")


def table1_desk(seed=0, data_dir=None, repeats=10):
    rows = []
    if data_dir is not None:
        for name, (_, _, beta, use_jk) in ORIGINAL_FILES.items():
            ds = load_original(data_dir, name)
            if ds is None:
                continue
            rows += ksplits_rows(ds, beta, use_jk)
            rows += kmeans_rows(ds, repeats, seed)
    if not rows:
        for name, build in presets.TABLE1_DESK.items():
            ds = build(seed)
            beta, use_jk = TABLE1_SETTINGS[name]
            rows += ksplits_rows(ds, beta, use_jk)
            rows += kmeans_rows(ds, repeats, seed)
    return rows


def sweep_n(seed=0, sizes=SWEEP_N, folds=1, repeats=10):
    rows = []
    for n in sizes:
        for fold in range(folds):
            ds = presets.sweep_dataset(n=n, c=10, dim=10, seed=derive_seed(seed, n, fold))
            rows += ksplits_rows(ds, 0.5)
            rows += kmeans_rows(ds, repeats, seed)
    return rows


def sweep_c(seed=0, counts=SWEEP_C, folds=1):
    rows = []
    for c in counts:
        for fold in range(folds):
            ds = presets.sweep_dataset(n=10_000, c=c, dim=10, seed=derive_seed(seed, c, fold))
            rows += ksplits_rows(ds, presets.scheduled_beta(c))
            const = ksplits_rows(ds, 0.5)[0]
            const.algorithm = "k-splits-beta-0.5"
            rows.append(const)
    return rows


def sweep_dim(seed=0, dims=SWEEP_DIM, folds=1):
    rows = []
    for dim in dims:
        for fold in range(folds):
            ds = presets.sweep_dataset(n=10_000, c=10, dim=dim, seed=derive_seed(seed, dim, fold))
            rows += ksplits_rows(ds, 0.5)
    return rows


def run_suite(suite, seed=0, data_dir=None, folds=1):
    if suite == "table1-desk":
        return table1_desk(seed, data_dir)
    if suite == "sweep-n":
        return sweep_n(seed, folds=folds)
    if suite == "sweep-c":
        return sweep_c(seed, folds=folds)
    if suite == "sweep-dim":
        return sweep_dim(seed, folds=folds)
    raise ValueError(f"unknown suite {suite!r}")


def write_csv(rows, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv())


def spearman(x, y) -> float:
    """Spearman rank correlation (average ranks for ties)."""
    def ranks(v):
        v = np.asarray(v, dtype=np.float64)
        order = np.argsort(v, kind="stable")
        r = np.empty(len(v))
        r[order] = np.arange(len(v), dtype=np.float64)
        for val in np.unique(v):
            tie = v == val
            r[tie] = r[tie].mean()
        return r
    rx, ry = ranks(x), ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    denom = np.sqrt((rx @ rx) * (ry @ ry))
    return float(rx @ ry / denom) if denom else 0.0
