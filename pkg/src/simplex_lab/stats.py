"""Oracles and hypothesis tests shared by every verification path.

The moment oracle is the exact Dirichlet mixed moment; the empirical side
always reports a standard error so checks can be phrased as SE-band
comparisons.  Face classification relies on the samplers' exact-zero
convention: a point's face is the support pattern of its coordinates, no
thresholding.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist
from scipy.stats import chi2

from . import _kernels
from .core import pochhammer, weight_vector
from .rng import as_generator


@dataclass
class TestReport:
    """Outcome of one check.

    ``p_value`` is the dual-purpose second field: a genuine p-value for
    permutation and chi-square tests (``kind="p"``), a distance in standard
    errors for SE-band checks (``kind="se"``), and an absolute deviation for
    exact-identity checks (``kind="tol"``).
    """

    __test__ = False  # not a pytest class, despite the name

    name: str
    statistic: float
    p_value: float
    passed: bool
    n_used: int
    kind: str = "p"

    def to_json(self) -> str:
        return json.dumps(
            {
                "statistic": self.statistic,
                "p_value": self.p_value,
                "pass": self.passed,
                "n_used": self.n_used,
            }
        )


def moment_indices(dim, max_order):
    """All exponent vectors of total order 1..max_order over ``dim`` coords."""
    out = []
    for order in range(1, max_order + 1):
        for combo in itertools.combinations_with_replacement(range(dim), order):
            idx = [0] * dim
            for i in combo:
                idx[i] += 1
            out.append(tuple(idx))
    return out


def dirichlet_moment_oracle(a, idx):
    """Exact mixed moment  E(prod X_i^{n_i}) = prod (a_i)_{n_i} / (a)_{order}."""
    a = weight_vector(a, strict=True)
    idx = np.asarray(idx, dtype=np.int64)
    if idx.size != a.size or np.any(idx < 0):
        raise ValueError("moment index must be nonnegative of length d+1")
    order = int(idx.sum())
    out = 1.0 / pochhammer(a.sum(), order)
    for ai, ni in zip(a, idx):
        if ni:
            out *= pochhammer(ai, int(ni))
    return out


def empirical_moment(samples, idx):
    """Sample mean and standard error of  prod x_i^{n_i}."""
    samples = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    if samples.shape[0] == 0:
        raise ValueError("samples must be nonempty")
    idx = np.asarray(idx, dtype=np.int64)
    vals = np.ones(samples.shape[0])
    for i, ni in enumerate(idx):
        if ni:
            vals *= samples[:, i] ** int(ni)
    n = vals.size
    se = float(vals.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return float(vals.mean()), se


def se_band_report(name, value, target, se, band, n_used):
    """SE-distance check: pass iff |value - target| <= band * se."""
    z = abs(value - target) / se if se > 0 else (0.0 if value == target else math.inf)
    return TestReport(
        name=name,
        statistic=value - target,
        p_value=z,
        passed=bool(z <= band),
        n_used=int(n_used),
        kind="se",
    )


def tolerance_report(name, deviation, tol, n_used=0):
    """Exact-identity check: pass iff the deviation is within tol."""
    return TestReport(
        name=name,
        statistic=float(deviation),
        p_value=float(deviation),
        passed=bool(abs(deviation) <= tol),
        n_used=int(n_used),
        kind="tol",
    )


def face_counts(samples):
    """Histogram of support patterns; exact zeros define the faces."""
    pts = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    patterns, counts = np.unique(pts > 0, axis=0, return_counts=True)
    out = {}
    for pat, cnt in zip(patterns, counts):
        out[tuple(int(i) for i in np.nonzero(pat)[0])] = int(cnt)
    return out


def chi_square_face_test(samples, expected, alpha=0.001):
    """Chi-square of observed face counts against expected face masses.

    ``expected`` maps face tuples to probabilities summing to 1.  Faces with
    expected count below 5 are pooled into one cell.  A sample whose support
    is not a key of ``expected`` signals a classification bug and raises.
    """
    total_p = sum(expected.values())
    if abs(total_p - 1.0) > 1e-9:
        raise ValueError(f"expected masses must sum to 1, got {total_p}")
    counts = face_counts(samples)
    unknown = set(counts) - set(expected)
    if unknown:
        raise ValueError(f"samples landed on faces with no expected mass: {sorted(unknown)}")
    n = int(sum(counts.values()))
    main_o, main_e = [], []
    pooled_o, pooled_e = 0.0, 0.0
    for face, p in expected.items():
        o = counts.get(face, 0)
        e = n * p
        if e < 5.0:
            pooled_o += o
            pooled_e += e
        else:
            main_o.append(o)
            main_e.append(e)
    if pooled_e > 0:
        main_o.append(pooled_o)
        main_e.append(pooled_e)
    obs = np.asarray(main_o, dtype=np.float64)
    exp = np.asarray(main_e, dtype=np.float64)
    if obs.size <= 1:
        stat, p_value = 0.0, 1.0
    else:
        stat = float(((obs - exp) ** 2 / exp).sum())
        p_value = float(chi2.sf(stat, df=obs.size - 1))
    return TestReport(
        name="chi_square_face",
        statistic=stat,
        p_value=p_value,
        passed=bool(p_value > alpha),
        n_used=n,
        kind="p",
    )


def energy_statistic(xs, ys):
    """Two-sample energy statistic  2 E d(X,Y) - E d(X,X') - E d(Y,Y')."""
    xs = np.atleast_2d(xs)
    ys = np.atleast_2d(ys)
    dxy = cdist(xs, ys).mean()
    dxx = cdist(xs, xs).mean()
    dyy = cdist(ys, ys).mean()
    return 2.0 * dxy - dxx - dyy


def energy_two_sample_test(xs, ys, permutations=199, rng=0, max_n=2000, alpha=0.01):
    """Permutation test on the energy statistic.

    Groups larger than ``max_n`` are subsampled without replacement (the
    O(n^2) distance matrix dominates otherwise).  The permutation p-value
    uses the add-one convention, so it is never smaller than
    1/(permutations+1).
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    ys = np.atleast_2d(np.asarray(ys, dtype=np.float64))
    if xs.shape[0] == 0 or ys.shape[0] == 0:
        raise ValueError("both samples must be nonempty")
    gen = as_generator(rng)
    if xs.shape[0] > max_n:
        xs = xs[gen.choice(xs.shape[0], size=max_n, replace=False)]
    if ys.shape[0] > max_n:
        ys = ys[gen.choice(ys.shape[0], size=max_n, replace=False)]
    n, m = xs.shape[0], ys.shape[0]
    pool = np.concatenate([xs, ys], axis=0)
    dist = cdist(pool, pool)
    total = float(dist.sum())
    perms = np.empty((permutations + 1, n + m), dtype=np.int64)
    perms[0] = np.arange(n + m)
    for p in range(1, permutations + 1):
        perms[p] = gen.permutation(n + m)
    stats = _kernels.energy_perm_stats(dist, perms, n, total)
    observed = float(stats[0])
    exceed = int((stats[1:] >= observed - 1e-15).sum())
    p_value = (1.0 + exceed) / (permutations + 1.0)
    return TestReport(
        name="energy_two_sample",
        statistic=observed,
        p_value=float(p_value),
        passed=bool(p_value > alpha),
        n_used=n + m,
        kind="p",
    )
