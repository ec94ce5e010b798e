"""Compiled Fincke-Pohst kernel.

Pruning uses the float image of an exact LDL^T decomposition with a small
slack, so no lattice point is ever cut off; every leaf's norm is recomputed in
integer arithmetic and binned exactly.
"""

import warnings

import numpy as np
from numba import njit, prange

warnings.filterwarnings("ignore", message=".*TBB.*")

SLACK = 1e-6


@njit(cache=True)
def _subtree(G, q, mu, bound, xtop, counts):
    n = G.shape[0]
    x = np.zeros(n, dtype=np.int64)
    rem = np.zeros(n, dtype=np.float64)
    exact = np.zeros(n, dtype=np.int64)
    center = np.zeros(n, dtype=np.float64)
    hi = np.zeros(n, dtype=np.int64)
    top = n - 1
    x[top] = xtop
    r = bound - q[top] * xtop * xtop
    if r < -SLACK:
        return
    if n == 1:
        e = G[0, 0] * xtop * xtop
        if e <= bound:
            counts[e] += 1
        return
    rem[top] = max(r, 0.0)
    exact[top] = G[top, top] * xtop * xtop
    i = top - 1
    # open level i
    c = 0.0
    for j in range(i + 1, n):
        c -= mu[i, j] * x[j]
    center[i] = c
    w = np.sqrt(rem[i + 1] / q[i]) + SLACK
    x[i] = np.int64(np.ceil(c - w))
    hi[i] = np.int64(np.floor(c + w))
    while True:
        if x[i] > hi[i]:
            i += 1
            if i == top:
                return
            x[i] += 1
            continue
        d = x[i] - center[i]
        r = rem[i + 1] - q[i] * d * d
        if r < -SLACK:
            x[i] += 1
            continue
        s = 0
        for j in range(i + 1, n):
            s += G[i, j] * x[j]
        exact[i] = exact[i + 1] + G[i, i] * x[i] * x[i] + 2 * x[i] * s
        if i == 0:
            if exact[0] <= bound:
                counts[exact[0]] += 1
            x[0] += 1
            continue
        rem[i] = max(r, 0.0)
        i -= 1
        c = 0.0
        for j in range(i + 1, n):
            c -= mu[i, j] * x[j]
        center[i] = c
        w = np.sqrt(rem[i + 1] / q[i]) + SLACK
        x[i] = np.int64(np.ceil(c - w))
        hi[i] = np.int64(np.floor(c + w))


@njit(cache=True, parallel=True)
def count_by_norm(G, q, mu, bound):
    """``counts[m]`` = number of integer vectors ``x`` with ``x^T G x = m <= bound``."""
    n = G.shape[0]
    w = int(np.floor(np.sqrt(bound / q[n - 1]) + SLACK))
    roots = 2 * w + 1
    partial = np.zeros((roots, bound + 1), dtype=np.int64)
    for k in prange(roots):
        _subtree(G, q, mu, bound, k - w, partial[k])
    return partial.sum(axis=0)
