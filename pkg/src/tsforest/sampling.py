"""Seeded sampling of candidate intervals.

Each tree node examines a random set of intervals whose size grows like the
series length M rather than its square: roughly sqrt(M) window sizes are
drawn without replacement, and for a window of size w roughly
sqrt(M - w + 1) start positions are drawn without replacement. All
randomness flows through an explicit numpy Generator so that a tree is a
pure function of its seed.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .errors import InvalidSampleSize

__all__ = [
    "sample_without_replacement",
    "sample_intervals",
    "tree_rng",
]


@njit(cache=True, nogil=True)
def _sample_no_rep(rng, n, m):
    # Partial Fisher-Yates over the integers 1..n; m distinct draws.
    pool = np.arange(1, n + 1)
    for i in range(m):
        j = rng.integers(i, n)
        tmp = pool[i]
        pool[i] = pool[j]
        pool[j] = tmp
    return pool[:m].copy()


@njit(cache=True, nogil=True)
def _sample_interval_array(rng, m):
    n_windows = int(np.floor(np.sqrt(np.float64(m))))
    if n_windows < 1:
        n_windows = 1
    windows = _sample_no_rep(rng, m, n_windows)
    total = 0
    for i in range(n_windows):
        avail = m - windows[i] + 1
        k = int(np.floor(np.sqrt(np.float64(avail))))
        total += k if k > 1 else 1
    out = np.empty((total, 2), dtype=np.int64)
    pos = 0
    for i in range(n_windows):
        w = windows[i]
        avail = m - w + 1
        k = int(np.floor(np.sqrt(np.float64(avail))))
        if k < 1:
            k = 1
        starts = _sample_no_rep(rng, avail, k)
        for s in range(k):
            out[pos, 0] = starts[s]
            out[pos, 1] = starts[s] + w - 1
            pos += 1
    return out


def sample_without_replacement(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """m distinct integers from 1..n, drawn with a partial Fisher-Yates pass.

    The draw consumes exactly m variates from ``rng`` regardless of n, so
    sequences stay reproducible across sample sizes.
    """
    n = int(n)
    m = int(m)
    if n < 1:
        raise InvalidSampleSize(f"population size must be >= 1, got {n}")
    if m < 1 or m > n:
        raise InvalidSampleSize(f"sample size {m} outside 1..{n}")
    return _sample_no_rep(rng, n, m)


def sample_intervals(rng: np.random.Generator, series_length: int) -> np.ndarray:
    """The random interval set one node examines, as an (n, 2) array of (t1, t2).

    floor(sqrt(M)) window sizes (at least one) are drawn without replacement
    from 1..M; for each, max(1, floor(sqrt(M - w + 1))) distinct start
    positions are drawn. Windows are consumed from ``rng`` first, then the
    start positions of each window in window-draw order. Intervals are
    1-based and inclusive on both ends. The total interval count is on the
    order of M, against M^2 possible intervals.
    """
    m = int(series_length)
    if m < 1:
        raise InvalidSampleSize(f"series length must be >= 1, got {m}")
    return _sample_interval_array(rng, m)


def tree_rng(master_seed: int, tree_index: int) -> np.random.Generator:
    """The generator owned by one tree of a forest.

    Seeded as PCG64(SeedSequence([master_seed, tree_index])), a stable,
    documented derivation: tree streams never collide, a tree's stream does
    not depend on how many trees exist or which worker builds it, and the
    whole forest is reproducible from the master seed alone.
    """
    seq = np.random.SeedSequence([int(master_seed), int(tree_index)])
    return np.random.Generator(np.random.PCG64(seq))
