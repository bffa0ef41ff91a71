"""Order-k quasi-Bernoulli random probabilities on [0, 1].

A draw is an atomic probability with at most k atoms: a restaurant-process
partition of k decides the block sizes, atom locations are i.i.d. from the
normalized base measure, and the weights follow the Dirichlet law with the
block sizes as parameters.  Binning a draw over a partition of [0, 1] must
reproduce the finite quasi-Bernoulli law with the bin masses as weights;
``verify_pber`` tests exactly that against the closed transforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from . import _kernels
from .core import face_weights
from .rng import as_generator
from .stats import chi_square_face_test, se_band_report
from .transforms import partition_transform_sum, tc_monte_carlo, tc_quasi_bernoulli

_WEIGHT_ATOL = 1e-12


@dataclass(frozen=True)
class BaseMeasure:
    """A finite measure on [0, 1]: total mass times a normalized base law.

    Supported bases: uniform, beta(p, q), and a piecewise-linear CDF given
    by knots (x_i, F_i).  Duplicated x-knots with increasing F encode atoms.
    """

    total_mass: float
    kind: str
    params: tuple = ()
    knots: tuple = ()

    def __post_init__(self):
        if self.total_mass <= 0:
            raise ValueError("total_mass must be > 0")
        if self.kind == "uniform":
            pass
        elif self.kind == "beta":
            p, q = self.params
            if p <= 0 or q <= 0:
                raise ValueError("beta parameters must be > 0")
        elif self.kind == "pwl":
            xs = np.array([x for x, _ in self.knots])
            fs = np.array([f for _, f in self.knots])
            if len(self.knots) < 2 or xs[0] != 0.0 or xs[-1] != 1.0:
                raise ValueError("piecewise-linear knots must span x = 0..1")
            if fs[0] != 0.0 or fs[-1] != 1.0:
                raise ValueError("piecewise-linear CDF must run from 0 to 1")
            if np.any(np.diff(xs) < 0) or np.any(np.diff(fs) < 0):
                raise ValueError("piecewise-linear CDF must be nondecreasing")
        else:
            raise ValueError(f"unknown base kind {self.kind!r}")

    @classmethod
    def uniform(cls, total_mass=1.0):
        return cls(total_mass=float(total_mass), kind="uniform")

    @classmethod
    def beta(cls, p, q, total_mass=1.0):
        return cls(total_mass=float(total_mass), kind="beta", params=(float(p), float(q)))

    @classmethod
    def piecewise_linear(cls, knots, total_mass=1.0):
        return cls(
            total_mass=float(total_mass),
            kind="pwl",
            knots=tuple((float(x), float(f)) for x, f in knots),
        )

    def cdf(self, t):
        t = np.asarray(t, dtype=np.float64)
        if self.kind == "uniform":
            return np.clip(t, 0.0, 1.0)
        if self.kind == "beta":
            p, q = self.params
            return betainc(p, q, np.clip(t, 0.0, 1.0))
        xs = np.array([x for x, _ in self.knots])
        fs = np.array([f for _, f in self.knots])
        return np.interp(t, xs, fs)

    def sample_base(self, rng, size):
        gen = as_generator(rng)
        if self.kind == "uniform":
            return gen.random(size)
        if self.kind == "beta":
            p, q = self.params
            return gen.beta(p, q, size=size)
        xs = np.array([x for x, _ in self.knots])
        fs = np.array([f for _, f in self.knots])
        return np.interp(gen.random(size), fs, xs)

    def mass(self, lo, hi):
        """Measure of the interval (lo, hi]."""
        return float(self.total_mass * (self.cdf(hi) - self.cdf(lo)))


@dataclass
class AtomicProbability:
    """A probability on [0, 1] carried by finitely many atoms."""

    locations: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.locations = np.asarray(self.locations, dtype=np.float64)
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.locations.shape != self.weights.shape:
            raise ValueError("locations and weights must align")
        if np.any(self.weights < 0):
            raise ValueError("weights must be nonnegative")
        if abs(self.weights.sum() - 1.0) > _WEIGHT_ATOL:
            raise ValueError("weights must sum to 1")
        if np.any((self.locations < 0) | (self.locations > 1)):
            raise ValueError("locations must lie in [0, 1]")

    def to_json_obj(self):
        return {"atoms": [[float(x), float(w)] for x, w in zip(self.locations, self.weights)]}


def sample_qb_process(k, measure: BaseMeasure, rng):
    """One random probability with at most k atoms.

    Atoms sharing a location (possible when the base has atoms) are merged,
    so the result is a measure, not a labelled list.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    gen = as_generator(rng)
    k = int(k)
    u = gen.random((1, k - 1))
    sizes, ntables = _kernels.crp_table_sizes(u, float(measure.total_mass))
    nt = int(ntables[0])
    locs = measure.sample_base(gen, (1, k))[0, :nt]
    e = gen.standard_exponential((1, k))[0]
    # block t gets the sum of its slice of unit exponentials: a gamma with
    # integer shape equal to the block size
    bounds = np.concatenate([[0], np.cumsum(sizes[0, :nt])])
    gammas = np.add.reduceat(e, bounds[:-1])
    weights = gammas / gammas.sum()
    uniq, inv = np.unique(locs, return_inverse=True)
    if uniq.size < nt:
        merged = np.zeros(uniq.size)
        np.add.at(merged, inv, weights)
        return AtomicProbability(uniq, merged)
    return AtomicProbability(locs, weights)


def bin_masses(measure: BaseMeasure, bin_edges):
    """Masses of the partition cells [t_i, t_{i+1}) induced by the edges."""
    edges = np.asarray(bin_edges, dtype=np.float64)
    if edges[0] != 0.0 or edges[-1] != 1.0 or np.any(np.diff(edges) <= 0):
        raise ValueError("bin edges must increase strictly from 0 to 1")
    cdf = measure.total_mass * measure.cdf(edges)
    return np.diff(cdf)


def sample_binned_qb_processes(k, measure: BaseMeasure, bin_edges, rng, size):
    """Vectorized draw of processes reduced to bin masses.

    Each row is (P(A_0), ..., P(A_d)) for one process draw; bins with no
    atom carry exact zeros, so face classification stays exact.  Binning
    commutes with atom merging, so merging is skipped here.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    edges = np.asarray(bin_edges, dtype=np.float64)
    nbins = edges.size - 1
    gen = as_generator(rng)
    n, k = int(size), int(k)
    u_seat = gen.random((n, k - 1))
    locs = measure.sample_base(gen, (n, k))
    e = gen.standard_exponential((n, k))
    sizes, ntables = _kernels.crp_table_sizes(u_seat, float(measure.total_mass))
    block_labels = np.minimum(
        np.searchsorted(edges[1:], locs, side="right"), nbins - 1
    ).astype(np.int64)
    slot_labels = _kernels.expand_block_labels(sizes, ntables, block_labels)
    out = _kernels.label_sums(slot_labels, e, nbins)
    out /= out.sum(axis=1, keepdims=True)
    return out


def tc_process(step_edges, step_values, k, measure: BaseMeasure):
    """Closed transform of the process against a piecewise-constant f.

    The power sums  sigma_j = int f(w)^{-j} alpha(dw)  are exact for
    piecewise-constant f, and the partition sum then matches the finite
    quasi-Bernoulli transform with the induced weights.
    """
    edges = np.asarray(step_edges, dtype=np.float64)
    vals = np.asarray(step_values, dtype=np.float64)
    if edges.size != vals.size + 1:
        raise ValueError("need one more edge than step value")
    if edges[0] != 0.0 or edges[-1] != 1.0 or np.any(np.diff(edges) <= 0):
        raise ValueError("step edges must increase strictly from 0 to 1")
    if np.any(vals <= 0):
        raise ValueError("f must be strictly positive")
    piece_mass = np.diff(measure.total_mass * measure.cdf(edges))
    j = np.arange(1, int(k) + 1)
    sigma = (piece_mass[None, :] / vals[None, :] ** j[:, None]).sum(axis=1)
    return partition_transform_sum(sigma, measure.total_mass, int(k))


def verify_pber(k, measure: BaseMeasure, bin_edges, n, rng, f_list=None, band=4.0, chi_alpha=0.001):
    """Binned process draws against the finite quasi-Bernoulli target.

    Runs the chi-square face test and, for each f in ``f_list``, compares
    the Monte Carlo transform of the binned draws with the closed transform
    of the target law within ``band`` standard errors.
    """
    alpha_bins = bin_masses(measure, bin_edges)
    if np.any(alpha_bins <= 0):
        raise ValueError("every bin must carry positive base mass")
    gen = as_generator(rng)
    binned = sample_binned_qb_processes(k, measure, bin_edges, gen, size=n)
    reports = []
    chi = chi_square_face_test(binned, face_weights(int(k), alpha_bins), alpha=chi_alpha)
    chi.name = "pber_face_chi_square"
    reports.append(chi)
    if f_list is None:
        f_list = [tuple(range(1, alpha_bins.size + 1))]
    for f in f_list:
        mc, se = tc_monte_carlo(binned, f, int(k))
        closed = tc_quasi_bernoulli(f, alpha_bins, int(k))
        reports.append(
            se_band_report(f"pber_transform_f={tuple(f)}", mc, closed, se, band, n)
        )
    return reports
