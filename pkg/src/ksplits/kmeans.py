"""Lloyd's k-means with random-point or caller-supplied initialisation."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _rng
from .numerics import as_matrix, squared_distances


@dataclass
class KMeansConfig:
    """k-means settings.

    When `centroids` is given it is used as the starting point and `seed` is
    ignored; otherwise k distinct data points are drawn with the package's
    PCG64 stream (see ``ksplits._rng``).
    """

    k: int
    seed: int = 0
    centroids: Optional[np.ndarray] = None
    max_iterations: int = 300


@dataclass
class KMeansResult:
    centroids: np.ndarray
    labels: np.ndarray
    iterations: int
    sse: float
    converged: bool
    sse_history: list = field(default_factory=list)


def assign_labels(data, centroids) -> np.ndarray:
    """Index of the nearest centroid for each point; ties go to the lowest index."""
    dist = squared_distances(data, centroids)
    return np.argmin(dist, axis=1)


def _means(data, labels, k):
    counts = np.bincount(labels, minlength=k)
    sums = np.empty((k, data.shape[1]))
    for d in range(data.shape[1]):
        sums[:, d] = np.bincount(labels, weights=data[:, d], minlength=k)
    return sums / np.maximum(counts, 1)[:, None], counts


def _repair_empty(data, labels, centroids):
    """Give every empty cluster the point farthest from its current centroid."""
    k = len(centroids)
    counts = np.bincount(labels, minlength=k)
    if counts.min() > 0:
        return labels, centroids
    labels = labels.copy()
    centroids = centroids.copy()
    for j in np.flatnonzero(counts == 0):
        diff = data - centroids[labels]
        dist = np.einsum("ij,ij->i", diff, diff)
        # donors must keep at least one point
        dist[counts[labels] < 2] = -1.0
        far = int(np.argmax(dist))
        counts[labels[far]] -= 1
        labels[far] = j
        counts[j] = 1
        centroids[j] = data[far]
    return labels, centroids


def _sse(data, labels, centroids):
    diff = data - centroids[labels]
    return float(np.einsum("ij,ij->", diff, diff))


def initial_centroids(data, config: KMeansConfig) -> np.ndarray:
    data = as_matrix(data)
    if config.centroids is not None:
        init = as_matrix(config.centroids).copy()
        if init.shape != (config.k, data.shape[1]):
            raise ValueError(
                f"given centroids have shape {init.shape}, expected ({config.k}, {data.shape[1]})"
            )
        return init
    idx = _rng.sample_without_replacement(config.seed, data.shape[0], config.k)
    return data[idx].copy()


def kmeans_run(data, config: KMeansConfig) -> KMeansResult:
    """Alternate nearest-centroid assignment and mean updates until the
    assignment stops changing or `max_iterations` update passes are done."""
    data = as_matrix(data)
    n = data.shape[0]
    if n == 0:
        raise ValueError("empty data")
    if config.k < 1:
        raise ValueError(f"k must be positive, got {config.k}")
    if config.k > n:
        raise ValueError(f"k={config.k} exceeds the number of points ({n})")
    if config.max_iterations < 1:
        raise ValueError("max_iterations must be positive")

    centroids = initial_centroids(data, config)
    labels, centroids = _repair_empty(data, assign_labels(data, centroids), centroids)
    history = [_sse(data, labels, centroids)]
    converged = False
    iterations = 0
    while iterations < config.max_iterations:
        iterations += 1
        centroids, _ = _means(data, labels, config.k)
        new_labels, centroids = _repair_empty(data, assign_labels(data, centroids), centroids)
        history.append(_sse(data, new_labels, centroids))
        if np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
    if not converged:
        labels = new_labels
        centroids, _ = _means(data, labels, config.k)
    return KMeansResult(
        centroids=centroids,
        labels=labels,
        iterations=iterations,
        sse=_sse(data, labels, centroids),
        converged=converged,
        sse_history=history,
    )
