"""Numba-compiled inner loops for the sequential samplers.

Both kernels consume a pre-drawn array of uniforms (one per step) and apply
the same inverse-CDF rule as :func:`exchrand.rngdist.sample_categorical`:
scan the cumulative weights and give any floating residue to the last
category.  Keeping the uniforms outside the kernel keeps reproducibility in
the hands of RandomSource.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def polya_labels(alphas: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Sequential urn draws; returns 0-based labels, one per uniform."""
    n = u.shape[0]
    k = alphas.shape[0]
    counts = np.zeros(k, dtype=np.float64)
    labels = np.empty(n, dtype=np.int64)
    total_alpha = 0.0
    for i in range(k):
        total_alpha += alphas[i]
    for t in range(n):
        r = u[t] * (total_alpha + t)
        acc = 0.0
        idx = k - 1
        for i in range(k):
            acc += alphas[i] + counts[i]
            if r < acc:
                idx = i
                break
        labels[t] = idx
        counts[idx] += 1.0
    return labels


@njit(cache=True)
def crp_assignments(alpha: float, theta: float, max_tables: int, u: np.ndarray) -> np.ndarray:
    """Sequential seating; returns the 0-based table index of each customer.

    ``max_tables`` caps the number of tables (the block-count bound k when
    theta = -k*alpha; pass n otherwise).  At the cap the new-table mass is
    exactly zero in exact arithmetic, so residue is folded into the last
    occupied table.
    """
    n = u.shape[0]
    assign = np.empty(n, dtype=np.int64)
    sizes = np.zeros(n if n > 0 else 1, dtype=np.float64)
    m = 0
    for t in range(n):
        if t == 0:
            assign[0] = 0
            sizes[0] = 1.0
            m = 1
            continue
        r = u[t] * (t + theta)
        acc = 0.0
        idx = m
        for j in range(m):
            acc += sizes[j] - alpha
            if r < acc:
                idx = j
                break
        if idx == m and m >= max_tables:
            idx = m - 1
        assign[t] = idx
        if idx == m:
            sizes[m] = 1.0
            m += 1
        else:
            sizes[idx] += 1.0
    return assign
