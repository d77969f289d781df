"""External validity scores for comparing partitions."""

import numpy as np

from .numerics import as_matrix


def _pairs(counts):
    counts = counts.astype(np.int64)
    return int((counts * (counts - 1) // 2).sum())


def contingency_table(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    ai = ai.ravel()
    bi = bi.ravel()
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    return table


def adjusted_rand_index(a, b) -> float:
    """Adjusted Rand index under the permutation model (Hubert & Arabie, 1985).

    With contingency table n_ij, row sums a_i, column sums b_j and n points:

        index    = sum_ij C(n_ij, 2)
        expected = sum_i C(a_i, 2) * sum_j C(b_j, 2) / C(n, 2)
        maximum  = (sum_i C(a_i, 2) + sum_j C(b_j, 2)) / 2
        ARI      = (index - expected) / (maximum - expected)

    Pair counts are exact integers. When maximum == expected the ratio is
    undefined; that only happens when both partitions are a single cluster
    or both are all singletons, and the result is then 1.0 if the partitions
    agree and 0.0 otherwise.
    """
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.shape != b.shape:
        raise ValueError(f"label vectors differ in length: {a.size} vs {b.size}")
    n = a.size
    if n < 2:
        raise ValueError("need at least two labels")
    table = contingency_table(a, b)
    index = _pairs(table.ravel())
    sum_a = _pairs(table.sum(axis=1))
    sum_b = _pairs(table.sum(axis=0))
    total = n * (n - 1) // 2
    expected = sum_a * sum_b / total
    maximum = (sum_a + sum_b) / 2
    if maximum == expected:
        identical = index == sum_a == sum_b
        return 1.0 if identical else 0.0
    return float((index - expected) / (maximum - expected))


def sse(data, labels, centroids) -> float:
    """Sum of squared distances from each point to its assigned centroid."""
    data = as_matrix(data)
    centroids = as_matrix(centroids)
    labels = np.asarray(labels)
    if labels.shape != (data.shape[0],):
        raise ValueError("labels length does not match the number of points")
    if labels.size and (labels.min() < 0 or labels.max() >= len(centroids)):
        raise ValueError(f"label out of range for {len(centroids)} centroids")
    diff = data - centroids[labels]
    return float(np.einsum("ij,ij->", diff, diff))
