"""Generated analogues of the public clustering benchmarks (A, S, Dim, G2,
Unbalance) and the datasets used by the parameter sweeps.

The originals are external files; these mimic their structure (cluster
count, sizes, dimension, rough overlap) at desk scale. Every preset is a
pure function of its arguments.
"""

import math

import numpy as np

from . import _rng
from .data import ClusterSpec, SyntheticSpec, generate_mixture


def split_counts(n, c):
    """Spread n points over c clusters as evenly as possible (earlier ones get the remainder)."""
    base, extra = divmod(n, c)
    return [base + (1 if i < extra else 0) for i in range(c)]


def random_means(c, dim, box, min_sep, seed, max_tries=100_000):
    """c points uniform in [0, box]^dim, at least `min_sep` apart (rejection sampling)."""
    means = []
    tries = 0
    chunk = 0
    while len(means) < c:
        u = _rng.uniforms(_rng.derive_seed(seed, 0x6D65616E, chunk), 256 * dim).reshape(256, dim)
        chunk += 1
        for cand in u * box:
            tries += 1
            if tries > max_tries:
                raise ValueError(f"could not place {c} means {min_sep} apart in a box of {box}")
            if all(np.linalg.norm(cand - m) >= min_sep for m in means):
                means.append(cand)
                if len(means) == c:
                    break
    return np.array(means)


def grid_means(c, dim, spacing):
    """First c nodes of a square grid in the first two axes (remaining axes 0)."""
    side = math.ceil(math.sqrt(c))
    means = np.zeros((c, dim))
    for i in range(c):
        means[i, 0] = (i % side) * spacing
        if dim > 1:
            means[i, 1] = (i // side) * spacing
    return means


def mixture(means, counts, std, seed, name):
    means = np.asarray(means, dtype=np.float64)
    stds = std if isinstance(std, (list, tuple)) else [std] * len(means)
    spec = SyntheticSpec(
        clusters=[ClusterSpec(int(n), list(m), s) for n, m, s in zip(counts, means, stds)],
        dim=means.shape[1],
        seed=seed,
    )
    ds = generate_mixture(spec, name=name)
    ds.meta = {"C": len(means), "dim": means.shape[1]}
    return ds


def g2_like(dim=2, sd=10.0, seed=0, n=2048):
    """Two Gaussians centred at (500,...,500) and (600,...,600)."""
    means = np.array([np.full(dim, 500.0), np.full(dim, 600.0)])
    return mixture(means, split_counts(n, 2), sd, seed, f"G2-{dim}-{sd:g}")


def s1_like(seed=0, n=5000, c=15):
    means = random_means(c, 2, 1000.0, 160.0, seed)
    return mixture(means, split_counts(n, c), 20.0, seed, "S1-like")


def a1_like(seed=0, n=3000, c=20):
    means = random_means(c, 2, 1000.0, 120.0, seed)
    return mixture(means, split_counts(n, c), 25.0, seed, "A1-like")


def dim_like(dim=32, seed=0, n=1024, c=16):
    means = random_means(c, dim, 1000.0, 300.0, seed)
    return mixture(means, split_counts(n, c), 10.0, seed, f"Dim{dim}-like")


def unbalance_like(seed=0):
    """Three dense 2000-point clusters and five sparse 100-point clusters."""
    dense = np.array([[150.0, 200.0], [250.0, 350.0], [350.0, 200.0]])
    sparse = np.array([[700.0, 150.0], [850.0, 150.0], [700.0, 350.0], [850.0, 350.0], [775.0, 500.0]])
    means = 2.0 * np.vstack([dense, sparse])
    counts = [2000] * 3 + [100] * 5
    stds = [2.0] * 3 + [5.0] * 5
    return mixture(means, counts, stds, seed, "Unbalance-like")


def sweep_dataset(n=10_000, c=10, dim=10, seed=0):
    """Sweep-style mixture: c Gaussians (std 3) in a 100-wide box, means at least 15 apart."""
    means = random_means(c, dim, 100.0, 15.0, seed)
    return mixture(means, split_counts(n, c), 3.0, seed, f"sweep-N{n}-C{c}-D{dim}")


def scheduled_beta(c):
    """beta for the cluster-count sweep: 0.5 up to 10 clusters, then 0.5 * sqrt(10 / c).

    More clusters in the same box means a smaller true gap relative to the
    first split distance, so the stop threshold has to come down with c.
    """
    return 0.5 if c <= 10 else 0.5 * math.sqrt(10.0 / c)


TABLE1_DESK = {
    "A1-like": lambda seed: a1_like(seed),
    "S1-like": lambda seed: s1_like(seed),
    "Dim32-like": lambda seed: dim_like(32, seed),
    "G2-2-10-like": lambda seed: g2_like(2, 10.0, seed),
    "G2-128-10-like": lambda seed: g2_like(128, 10.0, seed),
    "Unbalance-like": lambda seed: unbalance_like(seed),
}
