"""Named verification suites behind the CLI ``verify`` command.

Each suite returns a list of TestReports; everything is deterministic under
the given seed.  The suites are desk-scale versions of the acceptance
checks: exact identities at full precision, stochastic comparisons at the
sample sizes passed in.
"""

from __future__ import annotations

import numpy as np

from . import chain as chain_mod
from . import nu_measure, process, transforms
from .core import all_composition_weights, enumerate_portraits, ewens_pmf, face_weights
from .core import pk_from_generating_function, pk_polynomial
from .rng import RngStream
from .samplers import sample_quasi_bernoulli
from .stats import (
    TestReport,
    dirichlet_moment_oracle,
    empirical_moment,
    moment_indices,
    se_band_report,
    tolerance_report,
)

_CORE_WEIGHT_SETS = [(0.3, 1.7, 2.0), (1.0, 1.0), (0.5, 0.5, 0.5, 0.5)]
_FACE_CHECK_SETS = [(0.5, 0.5), (1.0, 2.0, 3.0), (0.5, 1.0, 1.5, 2.0)]


def suite_core(seed=42):
    reports = []

    dev = 0.0
    for a in _CORE_WEIGHT_SETS:
        for k in range(1, 7):
            _, w = all_composition_weights(k, a)
            dev = max(dev, abs(w.sum() - 1.0))
    reports.append(tolerance_report("composition_weight_total", dev, 1e-12))

    dev = 0.0
    for a in (0.5, 1.0, 2.7):
        for k in range(1, 11):
            total = sum(ewens_pmf(m, a) for m in enumerate_portraits(k))
            dev = max(dev, abs(total - 1.0))
    reports.append(tolerance_report("ewens_pmf_total", dev, 1e-12))

    dev = 0.0
    for a in _FACE_CHECK_SETS:
        for k in range(1, 7):
            comps, w = all_composition_weights(k, a)
            agg = {}
            for b, wb in zip(comps, w):
                face = tuple(int(i) for i in np.nonzero(b)[0])
                agg[face] = agg.get(face, 0.0) + wb
            for face, wt in face_weights(k, a).items():
                dev = max(dev, abs(wt - agg.get(face, 0.0)))
    reports.append(tolerance_report("face_weights_vs_compositions", dev, 1e-12))

    dev = 0.0
    for a in _FACE_CHECK_SETS:
        for k in range(0, 9):
            p1 = pk_polynomial(k, a)
            p2 = pk_from_generating_function(k, a)
            scale = max(abs(p1), abs(p2), 1.0)
            dev = max(dev, abs(p1 - p2) / scale)
    reports.append(tolerance_report("pk_vs_generating_function", dev, 1e-9))

    dev = 0.0
    for c in (0.5, 1.0, 2.0, 2.5, 7.0):
        for d in range(1, 5):
            dev = max(dev, abs(sum(nu_measure.nu_weights(c, d).dim_weights) - 1.0))
    reports.append(tolerance_report("nu_weight_total", dev, 1e-12))

    dev = 0.0
    for c in (1.0, 2.0, 3.0):
        got = nu_measure.nu_weights(c, 2).dim_weights
        denom = (c + 1.0) * (c + 2.0)
        want = (6.0 / denom, 6.0 * (c - 1.0) / denom, (c - 1.0) * (c - 2.0) / denom)
        dev = max(dev, max(abs(g - w) for g, w in zip(got, want)))
    reports.append(tolerance_report("nu_c2_explicit_display", dev, 1e-14))

    dev = 0.0
    f = np.array([1.0, 2.0, 3.0])
    a = np.array([0.7, 1.1, 2.2])
    for lam in (0.5, 2.0):
        base = transforms.tc_dirichlet(f, a)
        dev = max(
            dev,
            abs(transforms.tc_dirichlet(lam * f, a) - lam ** (-a.sum()) * base)
            / abs(base),
        )
        for k in (1, 3):
            base = transforms.tc_quasi_bernoulli(f, a, k)
            dev = max(
                dev,
                abs(transforms.tc_quasi_bernoulli(lam * f, a, k) - lam ** (-k) * base)
                / abs(base),
            )
    reports.append(tolerance_report("transform_homogeneity", dev, 1e-12))

    gen = RngStream(seed, 101).generator()
    dev = 0.0
    for d in range(1, 4):
        a = np.array(_FACE_CHECK_SETS[d - 1])
        for k in range(1, 7):
            for _ in range(5):
                f = gen.uniform(0.5, 2.0, size=d + 1)
                v1 = transforms.tc_quasi_bernoulli(f, a, k, method="compositions")
                v2 = transforms.tc_quasi_bernoulli(f, a, k, method="partitions")
                dev = max(dev, abs(v1 - v2) / abs(v1))
    reports.append(tolerance_report("qb_transform_two_routes", dev, 1e-10))

    return reports


def suite_transforms(seed=42, n=200_000):
    reports = []
    configs = [
        ((1.0, 1.0), 1, (1.0, 2.0)),
        ((1.0, 2.0, 3.0), 2, (1.0, 2.0, 3.0)),
        ((0.5, 0.5, 0.5), 3, (1.0, 2.0, 3.0)),
    ]
    for i, (a, k, f) in enumerate(configs):
        rep = transforms.verify_ratio_identity(
            a, k, f, n=n, rng=RngStream(seed, 200 + i), band=3.0
        )
        reports.append(
            se_band_report(
                f"ratio_identity_a={a}_k={k}", rep["mc"], rep["closed"], rep["se"], 3.0, n
            )
        )

    rep = transforms.verify_diff_relation((1.0, 1.0), 1, (1.0, 2.0))
    reports.append(tolerance_report("diff_relation_k1", rep["rel_err"], 1e-6))
    rep = transforms.verify_diff_relation((1.0, 1.0, 1.0), 2, (1.0, 2.0, 3.0))
    reports.append(tolerance_report("diff_relation_k2", rep["rel_err"], 1e-4))

    a = (1.0, 2.0, 3.0)
    dev = 0.0
    for k in (1, 2, 3):
        fw = face_weights(k, a)
        for zero_set in [(0,), (0, 1)]:
            closed = transforms.face_mass(a, k, zero_set)
            agg = sum(
                w for face, w in fw.items() if not set(zero_set) & set(face)
            )
            dev = max(dev, abs(closed - agg))
    reports.append(tolerance_report("face_mass_vs_face_weights", dev, 1e-10))

    f = np.array([1.0, 2.0, 3.0])
    closed, _ = transforms.fc_uniform(f, 1.3)
    mc_val, mc_se = transforms.fc_uniform(
        f, 1.3, rng=RngStream(seed, 210), mc_n=max(n // 2, 10_000), method="mc"
    )
    reports.append(se_band_report("fc_closed_vs_mc", mc_val, closed, mc_se, 4.0, n // 2))

    rep = nu_measure.verify_cp(3.5, 2, (1.0, 2.0, 3.0))
    reports.append(tolerance_report("cp_identity_closed", rep["rel_err"], 1e-8))
    rep = nu_measure.verify_cp(2.5, 1, (1.0, 2.0))
    reports.append(tolerance_report("cp_identity_d1", rep["rel_err"], 1e-8))

    return reports


def suite_chain(seed=42, n=50_000):
    reports = []
    a = (1.0, 2.0, 3.0)
    k = 2

    pts, terms = chain_mod.backward_series_sample(
        a, k, 1e-12, RngStream(seed, 300), size=n
    )
    worst = 0.0
    for idx in moment_indices(3, 3):
        mean, se = empirical_moment(pts, idx)
        z = abs(mean - dirichlet_moment_oracle(a, idx)) / se
        worst = max(worst, z)
    reports.append(
        TestReport("backward_series_moments", worst, worst, bool(worst <= 4.0), n, "se")
    )

    # thinned so the i.i.d. standard error is sound for autocorrelated output
    cfg = chain_mod.ChainConfig(a=a, k=k, burn_in=200, thin=8)
    states = chain_mod.run_chain(cfg, n, RngStream(seed, 301))
    worst = 0.0
    for idx in moment_indices(3, 3):
        mean, se = empirical_moment(states, idx)
        z = abs(mean - dirichlet_moment_oracle(a, idx)) / se
        worst = max(worst, z)
    reports.append(
        TestReport("forward_chain_moments", worst, worst, bool(worst <= 5.0), n, "se")
    )

    m = max(n // 20, 1_000)
    _, t1 = chain_mod.backward_series_sample(a, 1, 1e-12, RngStream(seed, 302), size=m)
    _, t4 = chain_mod.backward_series_sample(a, 4, 1e-12, RngStream(seed, 303), size=m)
    reports.append(
        TestReport(
            "series_terms_decrease_in_k",
            float(t1.mean() - t4.mean()),
            0.0,
            bool(t4.mean() < t1.mean()),
            2 * m,
            "se",
        )
    )

    # second moments approach the Dirichlet values monotonically in k
    gaps, ses = [], []
    for kk in (2, 4, 8, 16):
        pts = sample_quasi_bernoulli(a, kk, RngStream(seed, 310 + kk), size=n)
        worst_gap, worst_se = 0.0, 0.0
        for i in range(3):
            idx = tuple(2 if j == i else 0 for j in range(3))
            mean, se = empirical_moment(pts, idx)
            gap = abs(mean - dirichlet_moment_oracle(a, idx))
            if gap > worst_gap:
                worst_gap, worst_se = gap, se
        gaps.append(worst_gap)
        ses.append(worst_se)
    ok = all(
        gaps[i + 1] <= gaps[i] + 2.0 * (ses[i] + ses[i + 1])
        for i in range(len(gaps) - 1)
    )
    reports.append(
        TestReport("qb_to_dirichlet_trend", float(gaps[0] - gaps[-1]), 0.0, bool(ok), 4 * n, "se")
    )

    pts, _ = chain_mod.backward_series_sample(
        (0.5, 0.5), 1, 1e-12, RngStream(seed, 320), size=n
    )
    worst = 0.0
    for order, target in ((1, 0.5), (2, 0.375), (3, 0.3125)):
        mean, se = empirical_moment(pts, (0, order))
        worst = max(worst, abs(mean - target) / se)
    reports.append(
        TestReport("arcsine_case_moments", worst, worst, bool(worst <= 4.0), n, "se")
    )

    return reports


def suite_process(seed=42, n=50_000):
    reports = []
    measure = process.BaseMeasure.uniform(total_mass=2.0)
    reports.extend(
        process.verify_pber(
            2,
            measure,
            (0.0, 0.3, 1.0),
            n,
            RngStream(seed, 400),
            f_list=[(1.0, 2.0), (2.0, 1.0), (1.0, 5.0)],
        )
    )

    dev = 0.0
    for k in (1, 2, 3):
        closed = process.tc_process((0.0, 0.3, 1.0), (1.0, 2.0), k, measure)
        finite = transforms.tc_quasi_bernoulli((1.0, 2.0), (0.6, 1.4), k)
        dev = max(dev, abs(closed - finite) / abs(finite))
    reports.append(tolerance_report("tc_process_vs_finite", dev, 1e-12))

    gen = RngStream(seed, 401).generator()
    ok = True
    for _ in range(200):
        ap = process.sample_qb_process(3, measure, gen)
        ok &= ap.locations.size <= 3
        ok &= abs(ap.weights.sum() - 1.0) <= 1e-12
    reports.append(
        TestReport("process_atom_invariants", 0.0, 0.0, bool(ok), 200, "tol")
    )
    return reports


_SUITES = {
    "core": lambda seed, n: suite_core(seed),
    "transforms": lambda seed, n: suite_transforms(seed, n or 200_000),
    "chain": lambda seed, n: suite_chain(seed, n or 50_000),
    "process": lambda seed, n: suite_process(seed, n or 50_000),
}


def run_suite(name, seed=42, n=None):
    """Run one named suite (or ``all``); returns the list of TestReports."""
    if name == "all":
        out = []
        for key in ("core", "transforms", "chain", "process"):
            out.extend(_SUITES[key](seed, n))
        return out
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return _SUITES[name](seed, n)
