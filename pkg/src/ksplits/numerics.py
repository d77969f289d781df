"""Dense linear-algebra kernels used by the clustering code.

Points are stored one per row in float64 arrays. All reductions go through
numpy with a fixed call order, so repeated calls on the same input give
bit-identical output.
"""

from dataclasses import dataclass

import numpy as np

# eigh is exact enough and cheap below this size; above it power iteration runs.
FULL_EIGH_MAX_DIM = 64
POWER_TOL = 1e-10
POWER_MAX_ITER = 5000


class EmptyClusterError(ValueError):
    pass


class EigenSolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray


@dataclass(frozen=True)
class PcaProjection:
    mean: np.ndarray
    components: np.ndarray  # shape (m, n), rows orthonormal
    explained_fraction: float
    eigenvalues: np.ndarray

    @property
    def n_components(self) -> int:
        return self.components.shape[0]

    def transform(self, data) -> np.ndarray:
        data = as_matrix(data)
        return (data - self.mean) @ self.components.T

    def inverse_transform(self, projected) -> np.ndarray:
        return np.asarray(projected, dtype=np.float64) @ self.components + self.mean


def as_matrix(points) -> np.ndarray:
    """Coerce to a finite 2-D float64 array (one point per row)."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix with at least one column, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains non-finite values")
    return arr


def centroid(points) -> np.ndarray:
    points = as_matrix(points)
    if points.shape[0] == 0:
        raise EmptyClusterError("empty cluster")
    return points.mean(axis=0)


def covariance(points, center) -> np.ndarray:
    """Population covariance about `center`: (1/Q) * Xc^T Xc.

    The divisor is the point count Q, not Q - 1. The result is symmetrised
    explicitly because the matrix product is not guaranteed to be.
    """
    points = as_matrix(points)
    center = np.asarray(center, dtype=np.float64)
    if center.shape != (points.shape[1],):
        raise ValueError(
            f"center has shape {center.shape}, expected ({points.shape[1]},)"
        )
    if points.shape[0] == 0:
        raise EmptyClusterError("empty cluster")
    centered = points - center
    cov = (centered.T @ centered) / points.shape[0]
    return 0.5 * (cov + cov.T)


def _canonical_sign(vector):
    # Largest-magnitude component made positive; first index wins ties.
    idx = int(np.argmax(np.abs(vector)))
    return -vector if vector[idx] < 0 else vector


def _power_iteration(sym, tol, max_iter):
    n = sym.shape[0]
    starts = [np.full(n, 1.0 / np.sqrt(n))] + [np.eye(n)[i] for i in range(n)]
    for start in starts:
        v = start
        w = sym @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            # start vector lies in the null space; try the next one
            continue
        for _ in range(max_iter):
            v_new = w / norm
            w = sym @ v_new
            norm = np.linalg.norm(w)
            value = float(v_new @ w)
            residual = np.linalg.norm(w - value * v_new)
            if np.linalg.norm(v_new - v) <= tol or residual <= tol * max(value, 0.0):
                return EigenPair(max(value, 0.0), _canonical_sign(v_new))
            v = v_new
        raise EigenSolverError("eigen solver did not converge")
    # every start vector was annihilated: sym is the zero matrix
    return EigenPair(0.0, starts[0])


def dominant_eigenpair(sym, method="auto", tol=POWER_TOL, max_iter=POWER_MAX_ITER) -> EigenPair:
    """Largest eigenvalue and a unit eigenvector of a symmetric PSD matrix.

    `method` is "eigh" (full LAPACK decomposition), "power" (power iteration
    from the normalised all-ones vector, falling back to canonical basis
    vectors), or "auto", which picks eigh up to FULL_EIGH_MAX_DIM dimensions.
    The sign of the returned vector is normalised so its largest-magnitude
    component is positive; callers must not rely on any particular sign.
    """
    sym = np.asarray(sym, dtype=np.float64)
    if sym.ndim != 2 or sym.shape[0] != sym.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {sym.shape}")
    scale = max(1.0, float(np.max(np.abs(sym)))) if sym.size else 1.0
    if not np.allclose(sym, sym.T, rtol=0.0, atol=1e-9 * scale):
        raise ValueError("matrix is not symmetric")
    n = sym.shape[0]
    if method == "auto":
        method = "eigh" if n <= FULL_EIGH_MAX_DIM else "power"
    if method == "eigh":
        values, vectors = np.linalg.eigh(sym)
        return EigenPair(max(float(values[-1]), 0.0), _canonical_sign(vectors[:, -1]))
    if method == "power":
        return _power_iteration(sym, tol, max_iter)
    raise ValueError(f"unknown eigen method {method!r}")


def euclidean(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    return float(np.sqrt(diff @ diff))


def squared_distances(points, centers) -> np.ndarray:
    """(Q, k) matrix of squared distances, computed by explicit differences.

    The expanded ||x||^2 - 2x.c + ||c||^2 form is avoided on purpose: it
    loses precision far from the origin and breaks translation invariance.
    """
    points = as_matrix(points)
    centers = as_matrix(centers)
    if centers.shape[1] != points.shape[1]:
        raise ValueError(
            f"dimension mismatch: points have {points.shape[1]}, centers {centers.shape[1]}"
        )
    out = np.empty((points.shape[0], centers.shape[0]))
    for j, c in enumerate(centers):
        diff = points - c
        out[:, j] = np.einsum("ij,ij->i", diff, diff)
    return out


def pca_fit_transform(data, variance_fraction):
    """Project centered data onto the fewest principal axes that explain
    at least `variance_fraction` of the total variance."""
    if not (0.0 < variance_fraction <= 1.0):
        raise ValueError(f"variance_fraction must lie in (0, 1], got {variance_fraction}")
    data = as_matrix(data)
    if data.shape[0] < 2:
        raise ValueError("PCA needs at least two rows")
    mean = data.mean(axis=0)
    cov = covariance(data, mean)
    values, vectors = np.linalg.eigh(cov)
    order = np.argsort(values)[::-1]
    values = np.clip(values[order], 0.0, None)
    vectors = vectors[:, order]
    total = values.sum()
    if total == 0.0:
        m = 1
        fraction = 1.0
    elif variance_fraction >= 1.0:
        # rounding can leave the cumulative sum a hair under 1
        m = len(values)
        fraction = 1.0
    else:
        cumulative = np.cumsum(values) / total
        m = int(np.searchsorted(cumulative, variance_fraction, side="left")) + 1
        m = min(m, len(values))
        fraction = float(cumulative[m - 1])
    components = np.array([_canonical_sign(vectors[:, i]) for i in range(m)])
    proj = PcaProjection(mean, components, fraction, values)
    return proj, proj.transform(data)
