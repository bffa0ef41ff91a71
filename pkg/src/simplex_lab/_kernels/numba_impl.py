"""Numba implementations of the hot inner loops.

Each function here has a matching vectorized twin in ``numpy_impl`` with the
same signature and semantics; the dispatcher in ``__init__`` picks one.  All
kernels are deterministic transforms of pre-drawn random arrays.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def crp_table_sizes(u, a):
    # Sequential restaurant seating: customer t joins an occupied table of
    # size s with probability s/(a+t-1), opens a new one with a/(a+t-1).
    # One uniform per customer, rescaled to pick the table.
    n, km1 = u.shape
    k = km1 + 1
    sizes = np.zeros((n, k), dtype=np.int64)
    ntables = np.empty(n, dtype=np.int64)
    for i in range(n):
        sizes[i, 0] = 1
        m = 1
        for t in range(2, k + 1):
            x = u[i, t - 2] * (a + t - 1.0)
            if x < t - 1.0:
                acc = 0.0
                j = 0
                while True:
                    acc += sizes[i, j]
                    if x < acc:
                        break
                    j += 1
                sizes[i, j] += 1
            else:
                sizes[i, m] = 1
                m += 1
        ntables[i] = m
    return sizes, ntables


@njit(cache=True)
def expand_block_labels(sizes, ntables, block_labels):
    # Spread each block's label over as many slots as the block's size.
    # Total slots per row equal the row sum of sizes.
    n, k = sizes.shape
    out = np.empty((n, k), dtype=np.int64)
    for i in range(n):
        s = 0
        for b in range(ntables[i]):
            lab = block_labels[i, b]
            for _ in range(sizes[i, b]):
                out[i, s] = lab
                s += 1
    return out


@njit(cache=True)
def label_sums(labels, values, ncols):
    n, m = labels.shape
    out = np.zeros((n, ncols), dtype=np.float64)
    for i in range(n):
        for t in range(m):
            out[i, labels[i, t]] += values[i, t]
    return out


@njit(cache=True)
def categorical_rows(cum_p, u):
    # Row-specific inverse-cdf lookup; cum_p rows are nondecreasing with
    # final entry ~1.
    n, ncat = cum_p.shape
    m = u.shape[1]
    out = np.empty((n, m), dtype=np.int64)
    for i in range(n):
        for t in range(m):
            x = u[i, t]
            j = 0
            while j < ncat - 1 and x >= cum_p[i, j]:
                j += 1
            out[i, t] = j
    return out


@njit(cache=True)
def chain_recursion(x0, y, b):
    # x <- (1-y)x + y*b, renormalized each step so the state stays on the
    # simplex to the last ulp.
    nsteps, dim = b.shape
    states = np.empty((nsteps, dim), dtype=np.float64)
    x = x0.copy()
    for t in range(nsteps):
        tot = 0.0
        for c in range(dim):
            v = (1.0 - y[t]) * x[c] + y[t] * b[t, c]
            x[c] = v
            tot += v
        for c in range(dim):
            x[c] /= tot
            states[t, c] = x[c]
    return states


@njit(cache=True)
def series_accumulate(acc, residual, terms, y, b, eps):
    # One round of the backward series: consume up to T pre-drawn terms per
    # row, stopping as soon as the residual prefactor drops below eps.
    m, big_t, dim = b.shape
    for i in range(m):
        r = residual[i]
        for t in range(big_t):
            if r < eps:
                break
            w = r * y[i, t]
            for c in range(dim):
                acc[i, c] += w * b[i, t, c]
            r *= 1.0 - y[i, t]
            terms[i] += 1
        residual[i] = r


@njit(cache=True)
def energy_perm_stats(dist, perms, n, total):
    # Energy statistic for each permuted labelling of the pooled sample.
    # dist is the full pooled distance matrix; first n permuted indices form
    # the x-group.
    big_n = dist.shape[0]
    m = big_n - n
    p_count = perms.shape[0]
    stats = np.empty(p_count, dtype=np.float64)
    for p in range(p_count):
        sxx = 0.0
        for i in range(n):
            pi = perms[p, i]
            for j in range(i + 1, n):
                sxx += dist[pi, perms[p, j]]
        syy = 0.0
        for i in range(n, big_n):
            pi = perms[p, i]
            for j in range(i + 1, big_n):
                syy += dist[pi, perms[p, j]]
        sxx *= 2.0
        syy *= 2.0
        sxy = (total - sxx - syy) / 2.0
        stats[p] = 2.0 * sxy / (n * m) - sxx / (n * n) - syy / (m * m)
    return stats
