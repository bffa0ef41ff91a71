"""Combinatorial and special-function groundwork.

Conventions used throughout the package:

* a point of the simplex is a length d+1 float vector, nonnegative and
  summing to 1 (``check_simplex`` validates);
* a weight vector ``a`` is a length d+1 array with every entry >= 0 and a
  positive total; strictly positive entries are required where stated
  (zero entries mean the coordinate is almost surely zero);
* a composition of k is a length d+1 integer vector summing to k;
* a partition of k is encoded as a portrait, the length-k integer vector
  (m_1, ..., m_k) with sum(j * m_j) = k, m_j counting blocks of size j;
* a face is a sorted tuple of coordinate indices (nonempty, no repeats).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

DEFAULT_ENUM_CAP = 10_000_000
MAX_PORTRAIT_K = 60
MAX_SUBSET_DIM = 20  # inclusion-exclusion iterates 2^(d+1) subsets

_SUM_ATOL = 1e-12


class EnumerationTooLargeError(ValueError):
    """Requested enumeration exceeds the configured cap."""


def check_simplex(x, atol=_SUM_ATOL):
    """Validate and return a simplex point (or batch of row points)."""
    arr = np.asarray(x, dtype=np.float64)
    pts = np.atleast_2d(arr)
    if np.any(pts < 0):
        raise ValueError("simplex coordinates must be nonnegative")
    if np.any(np.abs(pts.sum(axis=1) - 1.0) > atol):
        raise ValueError(f"simplex coordinates must sum to 1 within {atol}")
    return arr


def weight_vector(a, strict=False):
    """Coerce and validate a Dirichlet weight vector.

    ``strict=True`` demands every entry positive; otherwise zero entries are
    allowed as long as the total is positive.
    """
    arr = np.asarray(a, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("weight vector must be nonempty")
    if strict:
        if np.any(arr <= 0):
            raise ValueError("weights must all be > 0")
    else:
        if np.any(arr < 0):
            raise ValueError("weights must be >= 0")
        if arr.sum() <= 0:
            raise ValueError("weight total must be > 0")
    return arr


def pochhammer(c, n):
    """Rising factorial (c)_n = c (c+1) ... (c+n-1), (c)_0 = 1.

    Iterative product up to n = 64 (exact for integer inputs in double
    precision), log-gamma ratio above.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    n = int(n)
    if n == 0:
        return 1.0
    c = float(c)
    if n <= 64:
        out = 1.0
        for i in range(n):
            out *= c + i
        return out
    if c <= 0:
        # a nonpositive c hits a zero (or pole) of the product for large n
        if c == int(c) and -int(c) < n:
            return 0.0
        raise ValueError("pochhammer with c <= 0 and n > 64 is not supported")
    return float(np.exp(gammaln(c + n) - gammaln(c)))


def enumerate_compositions(parts, k, cap=DEFAULT_ENUM_CAP):
    """All length-``parts`` compositions of k, first coordinate descending.

    Returns an (M, parts) int array, M = C(k + parts - 1, parts - 1).
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    count = math.comb(k + parts - 1, parts - 1)
    if count > cap:
        raise EnumerationTooLargeError(
            f"enumeration-too-large: C({k + parts - 1},{parts - 1}) = {count} > cap {cap}"
        )
    out = np.empty((count, parts), dtype=np.int64)
    row = np.zeros(parts, dtype=np.int64)
    pos = 0

    def rec(idx, remaining):
        nonlocal pos
        if idx == parts - 1:
            row[idx] = remaining
            out[pos] = row
            pos += 1
            return
        for v in range(remaining, -1, -1):
            row[idx] = v
            rec(idx + 1, remaining - v)

    rec(0, k)
    return out


def enumerate_portraits(k, cap=MAX_PORTRAIT_K):
    """All partitions of k in portrait encoding, largest parts first.

    Returns a (P, k) int array where row m satisfies sum(j * m[j-1]) = k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > cap:
        raise EnumerationTooLargeError(f"enumeration-too-large: k = {k} > cap {cap}")
    rows = []
    portrait = np.zeros(k, dtype=np.int64)

    def rec(remaining, max_part):
        if remaining == 0:
            rows.append(portrait.copy())
            return
        for part in range(min(remaining, max_part), 0, -1):
            portrait[part - 1] += 1
            rec(remaining - part, part)
            portrait[part - 1] -= 1

    rec(k, k)
    return np.array(rows, dtype=np.int64)


def portrait_to_block_sizes(m):
    """Nondecreasing block sizes of a portrait: value j repeated m_j times."""
    m = np.asarray(m, dtype=np.int64)
    return np.repeat(np.arange(1, m.size + 1), m)


def composition_weight(b, a):
    """Dirichlet-multinomial weight of one composition.

    weight = k!/(a)_k * prod_i (a_i)_{b_i} / b_i!  with k = sum(b); these
    weights sum to 1 over all compositions of k.
    """
    b = np.asarray(b, dtype=np.int64)
    a = weight_vector(a)
    if b.size != a.size:
        raise ValueError("composition and weights must have equal length")
    if np.any(b < 0):
        raise ValueError("composition entries must be >= 0")
    k = int(b.sum())
    out = math.factorial(k) / pochhammer(a.sum(), k)
    for bi, ai in zip(b, a):
        if bi:
            out *= pochhammer(ai, int(bi)) / math.factorial(int(bi))
    return out


def all_composition_weights(k, a, cap=DEFAULT_ENUM_CAP):
    """(compositions, weights) for every composition of k over len(a) parts."""
    a = weight_vector(a)
    comps = enumerate_compositions(a.size, k, cap=cap)
    w = np.full(comps.shape[0], math.factorial(k) / pochhammer(a.sum(), k))
    table = [
        np.array([pochhammer(ai, b) / math.factorial(b) for b in range(k + 1)])
        for ai in a
    ]
    for i in range(a.size):
        w *= table[i][comps[:, i]]
    return comps, w


def ewens_pmf(m, a):
    """Ewens probability of a portrait: C(m) a^{sum m_j} / (a)_k.

    C(m) = k! / prod_j j^{m_j} m_j! counts permutations of k elements whose
    cycle type is m.
    """
    m = np.asarray(m, dtype=np.int64)
    if np.any(m < 0):
        raise ValueError("portrait entries must be >= 0")
    k = int((np.arange(1, m.size + 1) * m).sum())
    if k < 1:
        raise ValueError("portrait must encode a partition of k >= 1")
    a = float(a)
    if a <= 0:
        raise ValueError("concentration must be > 0")
    denom = 1
    for j, mj in enumerate(m, start=1):
        if mj:
            denom *= j ** int(mj) * math.factorial(int(mj))
    cm = math.factorial(k) // denom
    return cm * a ** int(m.sum()) / pochhammer(a, k)


def pk_polynomial(k, a):
    """Alternating subset sum  sum_S (-1)^{d+1-|S|} (a_S)_k  over S of {0..d}.

    Vanishes whenever k <= d.  Evaluated by bitmask inclusion-exclusion;
    refuses more than MAX_SUBSET_DIM + 1 variables.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    nvar = a.size
    if nvar - 1 > MAX_SUBSET_DIM:
        raise ValueError(f"inclusion-exclusion limited to {MAX_SUBSET_DIM + 1} variables")
    if k < 0:
        raise ValueError("k must be >= 0")
    total = 0.0
    for mask in range(1 << nvar):
        s = 0.0
        bits = 0
        mm = mask
        i = 0
        while mm:
            if mm & 1:
                s += a[i]
                bits += 1
            mm >>= 1
            i += 1
        sign = 1.0 if (nvar - bits) % 2 == 0 else -1.0
        total += sign * pochhammer(s, k)
    return total


def pk_from_generating_function(k, a):
    """Same coefficient extracted from the product  prod_i [(1-t)^{-a_i} - 1].

    Independent route used to cross-check ``pk_polynomial``: multiply the
    truncated series of the factors and read off k! times the t^k term.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    # (1-t)^{-ai} = sum_n (ai)_n t^n / n!
    poly = np.zeros(k + 1)
    poly[0] = 1.0
    for ai in a:
        factor = np.array(
            [pochhammer(ai, n) / math.factorial(n) for n in range(k + 1)]
        )
        factor[0] -= 1.0  # the "- 1" of each bracket
        poly = np.convolve(poly, factor)[: k + 1]
    return poly[k] * math.factorial(k)


def face_weights(k, a):
    """Masses the order-k quasi-Bernoulli law puts on every open face.

    w_T = P_k((a_i)_{i in T}) / (a)_k over nonempty subsets T; the weights
    are nonnegative and sum to 1, and w_T = 0 whenever |T| > k.
    """
    a = weight_vector(a, strict=True)
    if k < 1:
        raise ValueError("k must be >= 1")
    d = a.size - 1
    if d > MAX_SUBSET_DIM:
        raise ValueError(f"face enumeration limited to d <= {MAX_SUBSET_DIM}")
    denom = pochhammer(a.sum(), k)
    out = {}
    for mask in range(1, 1 << (d + 1)):
        subset = tuple(i for i in range(d + 1) if mask >> i & 1)
        if len(subset) > k:
            out[subset] = 0.0
        else:
            out[subset] = pk_polynomial(k, a[list(subset)]) / denom
    return out
