"""Dataset loading, synthetic Gaussian mixtures and result files."""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from . import _rng
from .numerics import as_matrix


class DataFormatError(ValueError):
    pass


@dataclass
class ClusterSpec:
    count: int
    mean: Sequence[float]
    std: Union[float, Sequence[float]] = 1.0


@dataclass
class SyntheticSpec:
    clusters: list
    dim: int
    seed: int = 0
    n_points: Optional[int] = None

    def validate(self):
        if not self.clusters:
            raise ValueError("at least one cluster is required")
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        total = 0
        for i, c in enumerate(self.clusters):
            if c.count < 0:
                raise ValueError(f"cluster {i}: negative count")
            if len(c.mean) != self.dim:
                raise ValueError(f"cluster {i}: mean has length {len(c.mean)}, expected {self.dim}")
            std = np.broadcast_to(np.asarray(c.std, dtype=np.float64), (self.dim,))
            if not np.all(std > 0):
                raise ValueError(f"cluster {i}: std must be positive")
            total += c.count
        if self.n_points is not None and total != self.n_points:
            raise ValueError(f"cluster counts sum to {total}, expected n_points={self.n_points}")


@dataclass
class LabeledDataset:
    data: np.ndarray
    truth: Optional[np.ndarray] = None
    name: str = "dataset"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.truth is not None and len(self.truth) != len(self.data):
            raise ValueError("truth length does not match the number of points")

    @property
    def n_clusters(self) -> Optional[int]:
        return None if self.truth is None else int(len(np.unique(self.truth)))


def generate_mixture(spec: SyntheticSpec, name: str = "mixture") -> LabeledDataset:
    """Draw points cluster by cluster from axis-aligned Gaussians.

    Normals come from ``_rng.normals`` (Box-Muller over PCG64), so the same
    spec gives the same bytes on any platform. Points are emitted in cluster
    order; the truth label of a point is the index of its cluster.
    """
    spec.validate()
    total = sum(c.count for c in spec.clusters)
    noise = _rng.normals(spec.seed, total * spec.dim).reshape(total, spec.dim)
    data = np.empty((total, spec.dim))
    truth = np.empty(total, dtype=np.int64)
    row = 0
    for label, c in enumerate(spec.clusters):
        std = np.broadcast_to(np.asarray(c.std, dtype=np.float64), (spec.dim,))
        block = slice(row, row + c.count)
        data[block] = np.asarray(c.mean, dtype=np.float64) + noise[block] * std
        truth[block] = label
        row += c.count
    return LabeledDataset(data=data, truth=truth, name=name)


def _split_line(line, fmt):
    if fmt == "csv":
        return [tok.strip() for tok in line.split(",")]
    return line.split()


def load_matrix(path, fmt: str = "auto") -> np.ndarray:
    """Read one point per line, whitespace- or comma-separated.

    Trailing blank lines are ignored. Ragged rows, blank lines in the middle
    and non-numeric tokens raise DataFormatError naming the line (and column).
    """
    if fmt not in ("auto", "whitespace", "csv"):
        raise ValueError(f"unknown format {fmt!r}")
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise DataFormatError(f"{path}: empty file")
    if fmt == "auto":
        fmt = "csv" if "," in lines[0] else "whitespace"
    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        tokens = _split_line(line, fmt)
        if not line.strip():
            raise DataFormatError(f"{path}:{lineno}: blank line")
        values = []
        for col, tok in enumerate(tokens, start=1):
            try:
                value = float(tok)
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}:{col}: not a number: {tok!r}") from None
            if not math.isfinite(value):
                raise DataFormatError(f"{path}:{lineno}:{col}: non-finite value {tok!r}")
            values.append(value)
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise DataFormatError(
                f"{path}:{lineno}: expected {width} values, found {len(values)}"
            )
        rows.append(values)
    return np.array(rows, dtype=np.float64)


def save_matrix(data, path, fmt: str = "whitespace"):
    data = as_matrix(data)
    sep = "," if fmt == "csv" else " "
    with open(path, "w", encoding="utf-8") as fh:
        for row in data:
            fh.write(sep.join(f"{v:.17g}" for v in row))
            fh.write("\n")


def load_labels(path) -> np.ndarray:
    """Read one integer label per line and shift so the smallest label is 0.

    Partition files that carry a header block terminated by a line of dashes
    (the format of the public clustering benchmark ground truths) are
    accepted; everything up to the last dashed line is skipped.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    dashed = [i for i, line in enumerate(lines) if line.strip().startswith("---")]
    if dashed:
        lines = lines[dashed[-1] + 1:]
    labels = []
    for lineno, line in enumerate(lines, start=1):
        tok = line.strip()
        if not tok:
            continue
        try:
            labels.append(int(tok.split()[0]))
        except ValueError:
            raise DataFormatError(f"{path}:{lineno}: not an integer label: {tok!r}") from None
    if not labels:
        raise DataFormatError(f"{path}: no labels")
    arr = np.array(labels, dtype=np.int64)
    return arr - arr.min()


def save_labels(labels, path):
    with open(path, "w", encoding="utf-8") as fh:
        for v in np.asarray(labels, dtype=np.int64):
            fh.write(f"{int(v)}\n")


def _float(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else str(x)


def result_to_dict(result, include_timing: bool = True) -> dict:
    trace = []
    for snap in result.trace:
        d = snap.min_pair_distance
        ratio = None if d is None or not result.d_base else d / result.d_base
        trace.append({"k": snap.k, "j_k": _float(snap.j_k), "d": _float(d), "d_over_d_base": _float(ratio)})
    return {
        "final_k": int(result.final_k),
        "centroids": [[float(v) for v in row] for row in result.centroids],
        "labels": [int(v) for v in result.labels],
        "trace": trace,
        "selected_iteration": int(result.selected_iteration),
        "d_base": _float(result.d_base),
        "fine_tuned": bool(result.fine_tuned),
        "stop_reason": result.stop_reason,
        "rejected_ratio": _float(result.rejected_ratio),
        "wall_time": float(result.wall_time) if include_timing else None,
        "config": dict(result.config),
    }


def save_result(result, path, include_timing: bool = True, labels_path=None) -> Path:
    """Write the result as JSON plus a labels file next to it.

    Floats are written with Python's shortest round-trip repr (at most 17
    significant digits), so reloading gives the exact same doubles. Pass
    include_timing=False to get byte-identical files across reruns.
    Returns the path of the labels file.
    """
    path = Path(path)
    doc = result_to_dict(result, include_timing=include_timing)
    path.write_text(json.dumps(doc) + "\n", encoding="utf-8")
    labels_path = Path(labels_path) if labels_path else path.with_name(path.name + ".labels")
    save_labels(result.labels, labels_path)
    return labels_path


def load_result(path) -> dict:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    doc["centroids"] = np.array(doc["centroids"], dtype=np.float64)
    doc["labels"] = np.array(doc["labels"], dtype=np.int64)
    return doc
