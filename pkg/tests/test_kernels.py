"""The numba kernels and their numpy twins must agree on identical inputs."""

import numpy as np
import pytest

from simplex_lab._kernels import numba_impl, numpy_impl

pytestmark = pytest.mark.parametrize(
    "name",
    [
        "crp_table_sizes",
        "expand_block_labels",
        "label_sums",
        "categorical_rows",
        "chain_recursion",
        "series_accumulate",
        "energy_perm_stats",
    ],
)


def _inputs(name, rng):
    n, k, d1 = 500, 7, 3
    if name == "crp_table_sizes":
        return (rng.random((n, k - 1)), 2.5)
    if name == "expand_block_labels":
        u = rng.random((n, k - 1))
        sizes, ntables = numpy_impl.crp_table_sizes(u, 2.5)
        labels = rng.integers(0, d1, size=(n, k))
        return (sizes, ntables, labels)
    if name == "label_sums":
        return (rng.integers(0, d1, size=(n, k)), rng.random((n, k)), d1)
    if name == "categorical_rows":
        p = rng.dirichlet(np.ones(d1), size=n)
        return (np.cumsum(p, axis=1), rng.random((n, k)))
    if name == "chain_recursion":
        x0 = np.full(d1, 1.0 / d1)
        y = rng.beta(2.0, 6.0, size=n)
        b = rng.dirichlet(np.ones(d1), size=n)
        return (x0, y, b)
    if name == "series_accumulate":
        m, t = 64, 8
        return (
            np.zeros((m, d1)),
            np.ones(m),
            np.zeros(m, dtype=np.int64),
            rng.beta(2.0, 6.0, size=(m, t)),
            rng.dirichlet(np.ones(d1), size=(m, t)),
            1e-3,
        )
    if name == "energy_perm_stats":
        pts = rng.random((80, d1))
        dist = np.sqrt(((pts[:, None] - pts[None, :]) ** 2).sum(-1))
        perms = np.stack([rng.permutation(80) for _ in range(20)]).astype(np.int64)
        return (dist, perms, 40, float(dist.sum()))
    raise AssertionError(name)


def test_backends_agree(name):
    rng = np.random.default_rng(123)
    args_a = _inputs(name, rng)
    rng = np.random.default_rng(123)
    args_b = _inputs(name, rng)

    out_a = getattr(numba_impl, name)(*args_a)
    out_b = getattr(numpy_impl, name)(*args_b)

    if name == "series_accumulate":
        # in-place kernels: compare the mutated buffers
        for x, y in zip(args_a[:3], args_b[:3]):
            np.testing.assert_allclose(x, y, rtol=1e-12, atol=1e-15)
        return
    if isinstance(out_a, tuple):
        for x, y in zip(out_a, out_b):
            np.testing.assert_array_equal(x, y)
    elif out_a.dtype.kind == "f":
        np.testing.assert_allclose(out_a, out_b, rtol=1e-9, atol=1e-12)
    else:
        np.testing.assert_array_equal(out_a, out_b)
