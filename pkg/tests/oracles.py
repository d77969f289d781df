"""Slow, obviously-correct reference computations used to check the package.

Nothing here imports ksplits.
"""

import itertools
import math

import numpy as np


def column_means(points):
    points = [list(map(float, row)) for row in points]
    n = len(points)
    return [math.fsum(row[j] for row in points) / n for j in range(len(points[0]))]


def euclid(a, b):
    return math.sqrt(sum((float(x) - float(y)) ** 2 for x, y in zip(a, b)))


def top_eigenpair(sym):
    """Top eigenpair via SVD (for a PSD matrix singular values are eigenvalues)."""
    u, s, _ = np.linalg.svd(np.asarray(sym, dtype=np.float64))
    return float(s[0]), u[:, 0]


def nearest(points, centroids):
    labels = []
    for p in points:
        best, best_d = 0, None
        for j, c in enumerate(centroids):
            d = sum((float(x) - float(y)) ** 2 for x, y in zip(p, c))
            if best_d is None or d < best_d:
                best, best_d = j, d
        labels.append(best)
    return labels


def sse(points, labels, centroids):
    return math.fsum(
        sum((float(x) - float(y)) ** 2 for x, y in zip(p, centroids[l]))
        for p, l in zip(points, labels)
    )


def min_pair(centroids):
    return min(euclid(a, b) for a, b in itertools.combinations(centroids, 2))


def pair_counts(a, b):
    """(same-same, same-diff, diff-same, diff-diff) over all unordered pairs."""
    n11 = n10 = n01 = n00 = 0
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            sa = a[i] == a[j]
            sb = b[i] == b[j]
            if sa and sb:
                n11 += 1
            elif sa:
                n10 += 1
            elif sb:
                n01 += 1
            else:
                n00 += 1
    return n11, n10, n01, n00


def ari_from_pairs(n11, n10, n01, n00):
    """Adjusted Rand index written in pair counts (Steinley's form)."""
    num = 2.0 * (n11 * n00 - n10 * n01)
    den = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00)
    if den == 0:
        return 1.0 if n10 == 0 and n01 == 0 else 0.0
    return num / den


def ari_pairs(a, b):
    return ari_from_pairs(*pair_counts(a, b))


def ari_pairs_batch(A, B):
    """Vectorised pair-counting ARI for rows of A against rows of B (same n)."""
    A = np.asarray(A)
    B = np.asarray(B)
    n = A.shape[1]
    iu = np.triu_indices(n, 1)
    sa = (A[:, :, None] == A[:, None, :])[:, iu[0], iu[1]]
    sb = (B[:, :, None] == B[:, None, :])[:, iu[0], iu[1]]
    n11 = (sa & sb).sum(1).astype(np.int64)
    n10 = (sa & ~sb).sum(1).astype(np.int64)
    n01 = (~sa & sb).sum(1).astype(np.int64)
    n00 = (~sa & ~sb).sum(1).astype(np.int64)
    num = 2.0 * (n11 * n00 - n10 * n01)
    den = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00)
    out = np.where(den == 0, np.where((n10 == 0) & (n01 == 0), 1.0, 0.0), num / np.where(den == 0, 1, den))
    return out
