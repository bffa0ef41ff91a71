"""Pure-numpy fallbacks for the hot kernels.

Semantics match ``numba_impl`` exactly (same pre-drawn randomness in, same
stopping rules); the loops over independent draws are replaced by
vectorized array operations.
"""

import numpy as np


def crp_table_sizes(u, a):
    n, km1 = u.shape
    k = km1 + 1
    sizes = np.zeros((n, k), dtype=np.int64)
    sizes[:, 0] = 1
    ntables = np.ones(n, dtype=np.int64)
    rows = np.arange(n)
    for t in range(2, k + 1):
        x = u[:, t - 2] * (a + t - 1.0)
        join = x < (t - 1.0)
        cum = np.cumsum(sizes[:, : t - 1], axis=1)
        j = (cum <= x[:, None]).sum(axis=1)
        target = np.where(join, j, ntables)
        sizes[rows, target] += 1
        ntables += ~join
    return sizes, ntables


def expand_block_labels(sizes, ntables, block_labels):
    n, k = sizes.shape
    ends = np.cumsum(sizes, axis=1)
    marks = np.zeros((n, k), dtype=np.int64)
    rows, cols = np.nonzero(ends < k)
    np.add.at(marks, (rows, ends[rows, cols]), 1)
    slot_block = np.cumsum(marks, axis=1)
    return block_labels[np.arange(n)[:, None], slot_block]


def label_sums(labels, values, ncols):
    n, m = labels.shape
    flat = (np.arange(n)[:, None] * ncols + labels).ravel()
    out = np.bincount(flat, weights=values.ravel(), minlength=n * ncols)
    return out.reshape(n, ncols)


def categorical_rows(cum_p, u):
    ncat = cum_p.shape[1]
    labels = (u[:, :, None] >= cum_p[:, None, :]).sum(axis=2)
    return np.minimum(labels, ncat - 1).astype(np.int64)


def chain_recursion(x0, y, b):
    nsteps, dim = b.shape
    states = np.empty((nsteps, dim), dtype=np.float64)
    x = x0.astype(np.float64).copy()
    for t in range(nsteps):
        x = (1.0 - y[t]) * x + y[t] * b[t]
        x /= x.sum()
        states[t] = x
    return states


def series_accumulate(acc, residual, terms, y, b, eps):
    m, big_t, dim = b.shape
    cp = np.cumprod(1.0 - y, axis=1)
    before = np.empty_like(cp)
    before[:, 0] = 1.0
    before[:, 1:] = cp[:, :-1]
    before *= residual[:, None]
    # residual prefactors decrease monotonically, so "live" is a prefix
    live = before >= eps
    w = np.where(live, before * y, 0.0)
    acc += np.einsum("mt,mtc->mc", w, b)
    terms += live.sum(axis=1)
    all_live = live.all(axis=1)
    first_dead = live.argmin(axis=1)
    after_full = residual * cp[:, -1]
    residual[:] = np.where(
        all_live, after_full, before[np.arange(m), first_dead]
    )


def energy_perm_stats(dist, perms, n, total):
    big_n = dist.shape[0]
    m = big_n - n
    stats = np.empty(perms.shape[0], dtype=np.float64)
    for p in range(perms.shape[0]):
        ix = perms[p, :n]
        iy = perms[p, n:]
        sxx = dist[np.ix_(ix, ix)].sum()
        syy = dist[np.ix_(iy, iy)].sum()
        sxy = (total - sxx - syy) / 2.0
        stats[p] = 2.0 * sxy / (n * m) - sxx / (n * n) - syy / (m * m)
    return stats
