"""The simplex Markov chain and its exact-stationary backward series.

One transition moves the state x to (1-Y)x + Y*B with Y a beta(k, a)
variable and B an independent order-k quasi-Bernoulli draw; the Dirichlet
law with the same weights is stationary.  The forward chain gives
autocorrelated approximate draws; the backward series

    Z = sum_t (prod_{j<t} (1-Y_j)) Y_t B_t

truncated when the residual prefactor drops below epsilon gives i.i.d.
draws with O(epsilon) bias, removed up to that order by renormalizing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import check_simplex, weight_vector
from .rng import as_generator
from .samplers import sample_quasi_bernoulli

_CHUNK = 32_768
_TERM_BLOCK = 16


@dataclass(frozen=True)
class ChainConfig:
    """Transition parameters plus run policy (burn-in, thinning, start)."""

    a: tuple
    k: int
    burn_in: int = 200
    thin: int = 1
    x0: tuple | None = None
    route: str = "mixture"

    def __post_init__(self):
        a = weight_vector(self.a, strict=True)
        object.__setattr__(self, "a", tuple(float(v) for v in a))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.thin < 1:
            raise ValueError("thin must be >= 1")
        if self.x0 is not None:
            x0 = check_simplex(self.x0)
            if x0.size != a.size:
                raise ValueError("x0 must have length d+1")
            object.__setattr__(self, "x0", tuple(float(v) for v in x0))

    def start_point(self):
        if self.x0 is not None:
            return np.asarray(self.x0, dtype=np.float64)
        d1 = len(self.a)
        return np.full(d1, 1.0 / d1)


def chain_step(x, config: ChainConfig, rng):
    """One transition from state x; output stays exactly on the simplex."""
    x = check_simplex(x)
    gen = as_generator(rng)
    a = np.asarray(config.a)
    y = gen.beta(config.k, a.sum())
    b = sample_quasi_bernoulli(a, config.k, gen, route=config.route)
    out = (1.0 - y) * x + y * b
    return out / out.sum()


def iter_chain(config: ChainConfig, n, rng, block=8192):
    """Yield blocks of emitted states; bounded memory for long runs.

    Emits n states after ``burn_in`` steps, one every ``thin`` transitions,
    deterministically under a fixed stream.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = as_generator(rng)
    a = np.asarray(config.a)
    total_steps = config.burn_in + n * config.thin
    x = config.start_point()
    done = 0
    while done < total_steps:
        m = min(block, total_steps - done)
        y = gen.beta(config.k, a.sum(), size=m)
        b = sample_quasi_bernoulli(a, config.k, gen, size=m, route=config.route)
        states = _kernels.chain_recursion(x, y, b)
        x = states[-1].copy()
        g = np.arange(done, done + m)
        keep = (g >= config.burn_in) & ((g - config.burn_in + 1) % config.thin == 0)
        if np.any(keep):
            yield states[keep]
        done += m


def run_chain(config: ChainConfig, n, rng):
    """All emitted states as one (n, d+1) array."""
    return np.concatenate(list(iter_chain(config, n, rng)), axis=0)


def backward_series_sample(
    a, k, epsilon, rng, size=None, route="mixture", term_block=_TERM_BLOCK
):
    """Exact-stationary draws from the truncated backward series.

    Accumulates terms until the residual prefactor  prod (1-Y_j)  falls
    below epsilon, then renormalizes by the accumulated weight 1 - residual.
    Returns ``(points, terms_used)``.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must be in (0, 1)")
    a = weight_vector(a, strict=True)
    if k < 1:
        raise ValueError("k must be >= 1")
    gen = as_generator(rng)
    squeeze = size is None
    n = 1 if squeeze else int(size)
    if n < 1:
        raise ValueError("size must be >= 1")
    d1 = a.size
    points = np.empty((n, d1))
    terms = np.zeros(n, dtype=np.int64)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        m = hi - lo
        acc = np.zeros((m, d1))
        residual = np.ones(m)
        tcount = np.zeros(m, dtype=np.int64)
        active = np.arange(m)
        while active.size:
            ma = active.size
            y = gen.beta(float(k), float(a.sum()), size=(ma, term_block))
            b = sample_quasi_bernoulli(
                a, k, gen, size=ma * term_block, route=route
            ).reshape(ma, term_block, d1)
            acc_a = acc[active]
            res_a = residual[active]
            ter_a = tcount[active]
            _kernels.series_accumulate(acc_a, res_a, ter_a, y, b, float(epsilon))
            acc[active] = acc_a
            residual[active] = res_a
            tcount[active] = ter_a
            active = active[res_a >= epsilon]
        # accumulated weights telescope to 1 - residual; dividing by the row
        # sum is the same normalization and lands exactly on the simplex
        points[lo:hi] = acc / acc.sum(axis=1, keepdims=True)
        terms[lo:hi] = tcount
    if squeeze:
        return points[0], int(terms[0])
    return points, terms
