"""Portable seeded random streams.

Everything random in the package goes through PCG64 (O'Neill's permuted
congruential generator, 128-bit state, 64-bit output) seeded with a single
integer. Only the raw 64-bit output stream is consumed; the conversion to
uniforms, normals and index samples is done here, so datasets and k-means
initialisations do not depend on numpy's higher-level distribution code,
whose streams are not guaranteed stable between numpy releases.

  uniform:  u = ((r >> 11) + 0.5) * 2**-53, strictly inside (0, 1)
  normal:   Box-Muller on consecutive uniform pairs (u1, u2):
            z1 = sqrt(-2 ln u1) cos(2 pi u2), z2 = sqrt(-2 ln u1) sin(2 pi u2)
  sample:   partial Fisher-Yates, swap position i with i + (r mod (n - i))
"""

import numpy as np

_MASK64 = (1 << 64) - 1


def _raw(seed, count):
    bitgen = np.random.PCG64(int(seed) & _MASK64)
    return bitgen.random_raw(count).astype(np.uint64)


def uniforms(seed, count):
    raw = _raw(seed, count)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53


def normals(seed, count):
    pairs = (count + 1) // 2
    u = uniforms(seed, 2 * pairs)
    radius = np.sqrt(-2.0 * np.log(u[0::2]))
    angle = 2.0 * np.pi * u[1::2]
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:count]


def sample_without_replacement(seed, population, count):
    """Return `count` distinct indices from range(population), in draw order."""
    if count > population:
        raise ValueError(f"cannot draw {count} distinct items from {population}")
    raw = _raw(seed, count)
    pool = list(range(population))
    for i in range(count):
        j = i + int(raw[i] % np.uint64(population - i))
        pool[i], pool[j] = pool[j], pool[i]
    return np.array(pool[:count], dtype=np.int64)


def derive_seed(seed, *keys):
    """Deterministically mix extra integers into a seed (splitmix64 finaliser)."""
    x = int(seed) & _MASK64
    for key in keys:
        x = (x + 0x9E3779B97F4A7C15 + (int(key) & _MASK64)) & _MASK64
        x ^= x >> 30
        x = (x * 0xBF58476D1CE4E5B9) & _MASK64
        x ^= x >> 27
        x = (x * 0x94D049BB133111EB) & _MASK64
        x ^= x >> 31
    return x
