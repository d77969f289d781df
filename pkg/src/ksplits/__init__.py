"""k-splits clustering: automatic cluster-count discovery by principal-axis splitting."""

from .kmeans import KMeansConfig, KMeansResult, assign_labels, kmeans_run
from .metrics import adjusted_rand_index, sse
from .splitting import ClusteringResult, KSplitsConfig, fine_tune, ksplits_run

__all__ = [
    "KMeansConfig",
    "KMeansResult",
    "assign_labels",
    "kmeans_run",
    "adjusted_rand_index",
    "sse",
    "ClusteringResult",
    "KSplitsConfig",
    "fine_tune",
    "ksplits_run",
]
