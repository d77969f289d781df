"""k-splits: grow the cluster count one split at a time.

At every iteration each cluster gets a split priority

    priority = tanh(Q_C / (Q / k)) * lambda1

where Q_C is the cluster size, Q the total number of points, k the current
cluster count and lambda1 the top eigenvalue of the cluster's population
covariance. The tanh factor saturates for clusters larger than the average
size, so a huge but tight cluster cannot monopolise the splitting.

The highest-priority cluster is cut by the hyperplane through its centroid
orthogonal to its top eigenvector and the two halves are refined with
2-means. The distance between the first pair of centroids is the reference
distance d_base. Splitting stops when the smallest centroid gap d among all
current centroids satisfies d / d_base <= beta; the split that triggered the
stop is discarded.

Every accepted state is recorded with its density score

    J_k = mean over clusters of Q_C / lambda1

and, optionally, the state with the highest J_k is returned instead of the
last one. A final optional pass runs ordinary k-means seeded with the chosen
centroids.
"""

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .kmeans import KMeansConfig, KMeansResult, kmeans_run
from .numerics import (
    EigenSolverError,
    as_matrix,
    centroid,
    covariance,
    dominant_eigenpair,
    euclidean,
)

log = logging.getLogger(__name__)


class UnsplittableCluster(ValueError):
    pass


class NothingToSplit(Exception):
    pass


@dataclass
class ClusterView:
    members: np.ndarray
    centroid: np.ndarray
    lambda1: Optional[float] = None
    axis: Optional[np.ndarray] = None
    j_score: Optional[float] = None
    i_score: Optional[float] = None
    splittable: bool = True

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class KSplitsConfig:
    """Settings for :func:`ksplits_run`.

    beta controls when splitting stops: smaller values give more clusters.
    Dense data generally wants a larger beta (0.5 to 0.95), sparse and well
    separated data a smaller one (0.01 to 0.1).
    """

    beta: float = 0.1
    initial_k: int = 1
    use_jk_selection: bool = True
    fine_tune: bool = True
    max_clusters: Optional[int] = None
    seed: int = 0

    def validate(self):
        if not (0.0 < self.beta < 1.0):
            raise ValueError(f"beta must lie in the open interval (0, 1), got {self.beta}")
        if self.initial_k < 1:
            raise ValueError(f"initial_k must be positive, got {self.initial_k}")
        if self.max_clusters is not None and self.max_clusters < 1:
            raise ValueError(f"max_clusters must be positive, got {self.max_clusters}")


@dataclass
class IterationSnapshot:
    k: int
    labels: np.ndarray
    centroids: np.ndarray
    j_k: float
    min_pair_distance: Optional[float] = None


@dataclass
class ClusteringResult:
    final_k: int
    labels: np.ndarray
    centroids: np.ndarray
    trace: list
    selected_iteration: int
    d_base: Optional[float]
    fine_tuned: bool
    wall_time: float
    stop_reason: str
    raw_labels: np.ndarray
    raw_centroids: np.ndarray
    rejected_ratio: Optional[float] = None
    config: dict = field(default_factory=dict)


def score_cluster(data, cluster: ClusterView, total_points: int, current_k: int) -> ClusterView:
    """Fill in lambda1, axis, J^C and the split priority I^C.

    The eigen-analysis is cached on the view; only the priority depends on
    `total_points` and `current_k` and is recomputed on every call.
    """
    if cluster.lambda1 is None:
        points = data[cluster.members]
        if cluster.size < 2 or np.all(points == points[0]):
            cluster.lambda1 = 0.0
        else:
            cov = covariance(points, cluster.centroid)
            try:
                pair = dominant_eigenpair(cov)
            except EigenSolverError:
                log.debug("power iteration stalled on a %d-D cluster; using eigh", cov.shape[0])
                pair = dominant_eigenpair(cov, method="eigh")
            cluster.lambda1 = pair.value
            cluster.axis = pair.vector
        if cluster.lambda1 > 0.0:
            cluster.j_score = cluster.size / cluster.lambda1
        else:
            cluster.j_score = None
            cluster.splittable = False
    threshold = total_points / current_k
    cluster.i_score = math.tanh(cluster.size / threshold) * cluster.lambda1
    return cluster


def split_cluster(data, cluster: ClusterView, max_iterations: int = 300):
    """Cut a cluster with the hyperplane through its centroid orthogonal to
    its dominant axis, then refine the two halves with 2-means."""
    if cluster.size < 2:
        raise UnsplittableCluster("unsplittable cluster")
    if cluster.axis is None:
        score_cluster(data, cluster, cluster.size, 1)
        if cluster.axis is None:
            raise UnsplittableCluster("unsplittable cluster")
    points = data[cluster.members]
    side = (points - cluster.centroid) @ cluster.axis
    first = side >= 0
    if first.all() or not first.any():
        raise UnsplittableCluster("unsplittable cluster")
    seeds = np.vstack([points[first].mean(axis=0), points[~first].mean(axis=0)])
    refined = kmeans_run(points, KMeansConfig(k=2, centroids=seeds, max_iterations=max_iterations))
    halves = []
    for j in range(2):
        mask = refined.labels == j
        halves.append(ClusterView(members=cluster.members[mask], centroid=refined.centroids[j]))
    return halves[0], halves[1]


def pick_worst(clusters) -> int:
    """Index of the splittable cluster with the highest priority (lowest index on ties)."""
    best = None
    for idx, cluster in enumerate(clusters):
        if not cluster.splittable:
            continue
        if best is None or cluster.i_score > clusters[best].i_score:
            best = idx
    if best is None:
        raise NothingToSplit("terminate: nothing to split")
    return best


def min_pairwise_distance(centroids) -> float:
    centroids = as_matrix(centroids)
    if len(centroids) < 2:
        raise ValueError("need at least two centroids")
    best = math.inf
    for i in range(len(centroids) - 1):
        diff = centroids[i + 1:] - centroids[i]
        best = min(best, float(np.sqrt(np.einsum("ij,ij->i", diff, diff).min())))
    return best


def max_pairwise_distance(centroids) -> float:
    centroids = as_matrix(centroids)
    best = 0.0
    for i in range(len(centroids) - 1):
        diff = centroids[i + 1:] - centroids[i]
        best = max(best, float(np.sqrt(np.einsum("ij,ij->i", diff, diff).max())))
    return best


def density_score(clusters) -> float:
    """J_k: mean of Q_C / lambda1 over clusters with positive spread.

    Zero-spread clusters are left out of the average; if no cluster has any
    spread the state is perfectly dense and the score is +inf.
    """
    scores = [c.j_score for c in clusters if c.j_score is not None]
    if not scores:
        return math.inf
    return math.fsum(scores) / len(scores)


def _labels_of(clusters, n):
    labels = np.empty(n, dtype=np.int64)
    for idx, cluster in enumerate(clusters):
        labels[cluster.members] = idx
    return labels


def _snapshot(clusters, n):
    centroids = np.vstack([c.centroid for c in clusters])
    d = min_pairwise_distance(centroids) if len(clusters) > 1 else None
    return IterationSnapshot(
        k=len(clusters),
        labels=_labels_of(clusters, n),
        centroids=centroids,
        j_k=density_score(clusters),
        min_pair_distance=d,
    )


def _initial_clusters(data, config):
    n = data.shape[0]
    if config.initial_k == 1:
        return [ClusterView(members=np.arange(n), centroid=centroid(data))]
    km = kmeans_run(data, KMeansConfig(k=config.initial_k, seed=config.seed))
    return [
        ClusterView(members=np.flatnonzero(km.labels == j), centroid=km.centroids[j])
        for j in range(config.initial_k)
    ]


def _score_all(data, clusters):
    n = data.shape[0]
    for cluster in clusters:
        score_cluster(data, cluster, n, len(clusters))


def _split_worst(data, clusters):
    """Split the worst splittable cluster, skipping any whose split fails.

    Returns (index, first half, second half); raises NothingToSplit.
    """
    while True:
        worst = pick_worst(clusters)
        try:
            a, b = split_cluster(data, clusters[worst])
            return worst, a, b
        except UnsplittableCluster:
            clusters[worst].splittable = False


def ksplits_run(data, config: Optional[KSplitsConfig] = None) -> ClusteringResult:
    config = config or KSplitsConfig()
    config.validate()
    data = as_matrix(data)
    n = data.shape[0]
    if n == 0:
        raise ValueError("empty data")
    if config.initial_k > n:
        raise ValueError(f"initial_k={config.initial_k} exceeds the number of points ({n})")
    max_clusters = config.max_clusters or max(2, n // 2)
    max_clusters = min(max_clusters, n)

    start = time.perf_counter()
    clusters = _initial_clusters(data, config)
    _score_all(data, clusters)
    trace = [_snapshot(clusters, n)]
    d_base = None
    stop_reason = None
    rejected_ratio = None

    if len(clusters) > 1:
        d_base = max_pairwise_distance(trace[0].centroids)
        if d_base == 0.0:
            stop_reason = "unsplittable"

    while stop_reason is None:
        if len(clusters) >= max_clusters:
            stop_reason = "max_clusters"
            break
        try:
            worst, first, second = _split_worst(data, clusters)
        except NothingToSplit:
            stop_reason = "unsplittable"
            break
        candidate = clusters[:worst] + [first] + clusters[worst + 1:] + [second]
        if d_base is None:
            d_base = euclidean(first.centroid, second.centroid)
        else:
            d = min_pairwise_distance(np.vstack([c.centroid for c in candidate]))
            ratio = d / d_base
            if ratio <= config.beta:
                # the split that fired the stop condition is thrown away
                rejected_ratio = ratio
                stop_reason = "beta"
                break
        clusters = candidate
        _score_all(data, clusters)
        trace.append(_snapshot(clusters, n))
        log.debug("k=%d J_k=%.6g d=%s", trace[-1].k, trace[-1].j_k, trace[-1].min_pair_distance)

    if config.use_jk_selection:
        j_values = [s.j_k for s in trace]
        selected = int(np.argmax(j_values))
    else:
        selected = len(trace) - 1
    chosen = trace[selected]
    labels, centroids = chosen.labels, chosen.centroids
    if config.fine_tune:
        tuned = fine_tune(data, centroids)
        labels, centroids = tuned.labels, tuned.centroids
    wall_time = time.perf_counter() - start

    return ClusteringResult(
        final_k=len(centroids),
        labels=labels,
        centroids=centroids,
        trace=trace,
        selected_iteration=selected,
        d_base=d_base,
        fine_tuned=config.fine_tune,
        wall_time=wall_time,
        stop_reason=stop_reason,
        raw_labels=chosen.labels,
        raw_centroids=chosen.centroids,
        rejected_ratio=rejected_ratio,
        config=asdict(config),
    )


def fine_tune(data, centroids, max_iterations: int = 300) -> KMeansResult:
    """Standard k-means over all points, started from the given centroids."""
    centroids = as_matrix(centroids)
    return kmeans_run(
        data, KMeansConfig(k=len(centroids), centroids=centroids, max_iterations=max_iterations)
    )
