"""Benchmark the numba kernels against their pure-numpy fallbacks.

Usage:  python benchmarks/bench_kernels.py [N]

Each case pre-draws identical randomness, warms the JIT, then times both
backends on the same inputs.
"""

import sys
import time

from simplex_lab import (
    ChainConfig,
    RngStream,
    backward_series_sample,
    run_chain,
    sample_quasi_bernoulli,
    set_backend,
)
from simplex_lab.stats import energy_two_sample_test


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(n):
    a = (1.0, 2.0, 3.0)
    yield "qb_ewens_batch", lambda: sample_quasi_bernoulli(
        a, 8, RngStream(1), size=n, route="ewens"
    )
    yield "qb_mixture_batch", lambda: sample_quasi_bernoulli(
        a, 8, RngStream(2), size=n, route="mixture"
    )
    cfg = ChainConfig(a=a, k=2, burn_in=0)
    yield "chain_recursion", lambda: run_chain(cfg, n, RngStream(3))
    yield "backward_series", lambda: backward_series_sample(
        a, 2, 1e-8, RngStream(4), size=max(n // 10, 1)
    )
    x = sample_quasi_bernoulli(a, 3, RngStream(5), size=1500)
    y = sample_quasi_bernoulli(a, 3, RngStream(6), size=1500, route="ewens")
    yield "energy_permutations", lambda: energy_two_sample_test(
        x, y, permutations=99, rng=RngStream(7)
    )


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    print(f"n = {n}")
    print(f"{'kernel':<22}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, fn in cases(n):
        set_backend("numba")
        fn()  # warm the JIT so compile time is excluded
        t_numba, _ = timed(fn)
        set_backend("numpy")
        t_numpy, _ = timed(fn)
        set_backend(None)
        print(f"{name:<22}{t_numba:>12.4f}{t_numpy:>12.4f}{t_numpy / t_numba:>9.1f}x")


if __name__ == "__main__":
    main()
