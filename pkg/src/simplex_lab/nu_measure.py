"""Continuous-order face mixtures on the simplex.

For an order parameter c > 0 and dimension d, the measure mixes the uniform
laws on the unions of k-dimensional faces, k = 0..d, with weights

    w_k = [d! (d+1)! / ((c+1)...(c+d))] * (c-1)(c-2)...(c-k) / (k!(k+1)!(d-k)!).

The weights always sum to one but are all nonnegative (a probability)
exactly when c is a positive integer or c > d.  At integer c = k <= d the
mixture coincides with the order-k quasi-Bernoulli law with unit weights.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import pochhammer
from .rng import RngStream, as_generator
from .transforms import fc_uniform, flat_simplex_inverse_moment

_INT_TOL = 1e-12
_NONNEG_TOL = 1e-14


class SignedMeasureError(ValueError):
    """The requested mixture has signed weights and is not a probability."""


@dataclass(frozen=True)
class NuSpec:
    """Mixture weights of the face-uniform laws for one (c, d)."""

    c: float
    d: int
    dim_weights: tuple

    @property
    def is_probability(self) -> bool:
        return all(w >= -_NONNEG_TOL for w in self.dim_weights)


def is_positive_integer(c, tol=_INT_TOL):
    return c > 0.5 and abs(c - round(c)) <= tol


def exists_probability(c, d) -> bool:
    """True iff the (c, d) mixture is a genuine probability measure."""
    if c <= 0:
        raise ValueError("c must be > 0")
    if d < 1:
        raise ValueError("d must be >= 1")
    return is_positive_integer(c) or c > d


def nu_weights(c, d) -> NuSpec:
    """Mixture weights over face dimension k = 0..d (signed weights allowed).

    c within 1e-12 of an integer is snapped to it, so the vanishing factors
    produce exact zero weights.
    """
    if c <= 0:
        raise ValueError("c must be > 0")
    d = int(d)
    if d < 1:
        raise ValueError("d must be >= 1")
    c = float(round(c)) if is_positive_integer(c) else float(c)
    norm = math.factorial(d) * math.factorial(d + 1) / pochhammer(c + 1, d)
    ws = []
    for k in range(d + 1):
        num = 1.0
        for j in range(1, k + 1):
            num *= c - j
        w = norm * num / (math.factorial(k) * math.factorial(k + 1) * math.factorial(d - k))
        ws.append(w + 0.0)  # normalize -0.0
    return NuSpec(c=c, d=d, dim_weights=tuple(ws))


def per_face_masses(c, d):
    """Mass of each individual face, keyed by its index tuple."""
    spec = nu_weights(c, d)
    out = {}
    for k in range(d + 1):
        nfaces = math.comb(d + 1, k + 1)
        for t in itertools.combinations(range(d + 1), k + 1):
            out[t] = spec.dim_weights[k] / nfaces
    return out


def face_transform_integral(f, c, subset, rng=None, mc_n=200_000):
    """int <f,x>^{-c} against the flat law on the face spanned by ``subset``.

    Restricting to the face reduces to the flat-simplex inverse moment of
    the sub-vector at the same exponent; the divided-difference/Monte-Carlo
    switch is inherited from there.
    """
    f = np.asarray(f, dtype=np.float64)
    subset = tuple(sorted(int(i) for i in subset))
    return flat_simplex_inverse_moment(f[list(subset)], float(c), rng=rng, mc_n=mc_n)


def verify_cp(c, d, f, mc_n=200_000, rng=None):
    """Check the defining identity of the mixture against the flat simplex.

    Left side: the mixture applied to x -> <f,x>^{-c}, accumulated face by
    face.  Right side: prod(f) times the flat-simplex integral at exponent
    c+d+1.  Returns both sides, the relative error, and the worst Monte
    Carlo standard error encountered (None when fully closed form).
    """
    f = np.asarray(f, dtype=np.float64)
    if f.size != d + 1:
        raise ValueError("f must have length d+1")
    if np.any(f <= 0):
        raise ValueError("f must be strictly positive")
    gen = as_generator(rng if rng is not None else RngStream(3001))
    lhs = 0.0
    worst_se = None
    for subset, mass in per_face_masses(c, d).items():
        if mass == 0.0:
            continue
        val, se = face_transform_integral(f, c, subset, rng=gen, mc_n=mc_n)
        lhs += mass * val
        if se is not None:
            scaled = abs(mass) * se
            worst_se = scaled if worst_se is None else max(worst_se, scaled)
    rhs_integral, rhs_se = fc_uniform(f, float(c), rng=gen, mc_n=mc_n)
    rhs = float(np.prod(f)) * rhs_integral
    if rhs_se is not None:
        scaled = float(np.prod(f)) * rhs_se
        worst_se = scaled if worst_se is None else max(worst_se, scaled)
    rel_err = abs(lhs - rhs) / abs(rhs)
    return {"lhs": lhs, "rhs": rhs, "rel_err": rel_err, "mc_se": worst_se}
