"""Random generation on the simplex.

All samplers share the same contract: they accept an ``RngStream``, a
``numpy.random.Generator`` or an int seed, draw their randomness through
numpy's ``Generator`` (so fixed seeds give bit-identical output), and return
either one point (``size=None``) or a ``(size, d+1)`` array of row points.

Points that belong to a proper face carry exact 0.0 in the off-face
coordinates, so face membership downstream is an exact test, never a
threshold.

Two independent routes generate the order-k quasi-Bernoulli law:

* ``mixture`` draws p from the Dirichlet law, a size-k composition from p,
  and a point from the (extended) Dirichlet law of that composition.  The
  three stages collapse into one pass: k category labels from p plus k unit
  exponentials, summed per category and normalized.
* ``ewens`` seats k customers at random tables (restaurant process with
  concentration a), labels each table by a category drawn with probability
  a_i/a, draws table weights from the Dirichlet law with the table sizes
  as parameters, and accumulates the weights per category.

The two routes must agree in distribution; the verification suites test
exactly that.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import _kernels
from .core import weight_vector
from .nu_measure import SignedMeasureError, nu_weights
from .rng import as_generator


def _batch(size):
    if size is None:
        return 1, True
    n = int(size)
    if n < 1:
        raise ValueError("size must be >= 1")
    return n, False


def _finish(out, squeeze):
    return out[0] if squeeze else out


def sample_dirichlet(a, rng, size=None):
    """Dirichlet draw via normalized independent gammas.

    Zero entries of ``a`` are legal and yield exactly-zero coordinates
    (the law then lives on the corresponding face).
    """
    a = weight_vector(a)
    gen = as_generator(rng)
    n, squeeze = _batch(size)
    g = gen.gamma(np.broadcast_to(a, (n, a.size)))
    out = g / g.sum(axis=1, keepdims=True)
    return _finish(out, squeeze)


def sample_bernoulli_vertex(a, rng, size=None):
    """Vertex e_i with probability a_i / a, emitted with exact 0/1 entries."""
    a = weight_vector(a)
    gen = as_generator(rng)
    n, squeeze = _batch(size)
    cum = np.cumsum(a / a.sum())
    labels = np.minimum(np.searchsorted(cum, gen.random(n), side="right"), a.size - 1)
    out = np.zeros((n, a.size))
    out[np.arange(n), labels] = 1.0
    return _finish(out, squeeze)


def _qb_mixture_batch(a, k, gen, n):
    d1 = a.size
    g = gen.gamma(np.broadcast_to(a, (n, d1)))
    u = gen.random((n, k))
    e = gen.standard_exponential((n, k))
    p = g / g.sum(axis=1, keepdims=True)
    labels = _kernels.categorical_rows(np.cumsum(p, axis=1), u)
    out = _kernels.label_sums(labels, e, d1)
    out /= out.sum(axis=1, keepdims=True)
    return out


def _qb_ewens_batch(a, k, gen, n):
    d1 = a.size
    u_seat = gen.random((n, k - 1))
    u_label = gen.random((n, k))
    e = gen.standard_exponential((n, k))
    sizes, ntables = _kernels.crp_table_sizes(u_seat, float(a.sum()))
    cum = np.cumsum(a / a.sum())
    block_labels = np.minimum(
        np.searchsorted(cum, u_label, side="right"), d1 - 1
    ).astype(np.int64)
    slot_labels = _kernels.expand_block_labels(sizes, ntables, block_labels)
    out = _kernels.label_sums(slot_labels, e, d1)
    out /= out.sum(axis=1, keepdims=True)
    return out


def sample_quasi_bernoulli(a, k, rng, size=None, route="mixture"):
    """Order-k quasi-Bernoulli draw by either generating route."""
    a = weight_vector(a, strict=True)
    if k < 1:
        raise ValueError("k must be >= 1")
    gen = as_generator(rng)
    n, squeeze = _batch(size)
    if route == "mixture":
        out = _qb_mixture_batch(a, int(k), gen, n)
    elif route == "ewens":
        out = _qb_ewens_batch(a, int(k), gen, n)
    else:
        raise ValueError(f"route must be 'mixture' or 'ewens', got {route!r}")
    return _finish(out, squeeze)


def sample_crp_portrait(k, a, rng, size=None):
    """Partition portraits from sequential restaurant seating.

    Customer t joins a table of current size s with probability s/(a+t-1)
    and opens a new table with probability a/(a+t-1); the returned portrait
    row counts tables of each size and follows the Ewens law.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    a = float(a)
    if a <= 0:
        raise ValueError("concentration must be > 0")
    gen = as_generator(rng)
    n, squeeze = _batch(size)
    u = gen.random((n, k - 1))
    sizes, _ = _kernels.crp_table_sizes(u, a)
    portraits = np.zeros((n, k), dtype=np.int64)
    flat = sizes.ravel()
    mask = flat > 0
    rows = np.repeat(np.arange(n), k)[mask]
    np.add.at(portraits, (rows, flat[mask] - 1), 1)
    return _finish(portraits, squeeze)


def _face_subsets(d, k):
    return np.array(list(itertools.combinations(range(d + 1), k + 1)), dtype=np.int64)


def sample_face_uniform(d, k, rng, size=None):
    """Uniform law on the union of the k-dimensional faces.

    Picks one of the C(d+1, k+1) faces uniformly, then a flat Dirichlet
    point supported on it.
    """
    if not 0 <= k <= d:
        raise ValueError("need 0 <= k <= d")
    gen = as_generator(rng)
    n, squeeze = _batch(size)
    subsets = _face_subsets(d, k)
    idx = np.minimum((gen.random(n) * len(subsets)).astype(np.int64), len(subsets) - 1)
    e = gen.standard_exponential((n, k + 1))
    w = e / e.sum(axis=1, keepdims=True)
    out = np.zeros((n, d + 1))
    out[np.arange(n)[:, None], subsets[idx]] = w
    return _finish(out, squeeze)


def sample_nu(c, d, rng, size=None):
    """Draw from the continuous-order face mixture when it is a probability.

    Raises :class:`SignedMeasureError` when the mixture weights are signed
    (c neither a positive integer nor > d).
    """
    spec = nu_weights(c, d)
    if not spec.is_probability:
        raise SignedMeasureError(
            f"nu_{{c,d}} is not a probability for c={c}, d={d}"
        )
    gen = as_generator(rng)
    n, squeeze = _batch(size)
    cum = np.cumsum(spec.dim_weights)
    dims = np.minimum(np.searchsorted(cum, gen.random(n), side="right"), d)
    out = np.empty((n, d + 1))
    for kk in range(d + 1):
        rows = np.nonzero(dims == kk)[0]
        if rows.size:
            out[rows] = sample_face_uniform(d, kk, gen, size=rows.size)
    return _finish(out, squeeze)


def face_of_point(x):
    """Support of a point as a face key (indices of nonzero coordinates)."""
    x = np.asarray(x)
    return tuple(int(i) for i in np.nonzero(x > 0)[0])
