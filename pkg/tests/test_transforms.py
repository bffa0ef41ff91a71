import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplex_lab import (
    RngStream,
    face_mass,
    face_weights,
    fc_uniform,
    power_sums,
    sample_dirichlet,
    sample_quasi_bernoulli,
    tc_dirichlet,
    tc_monte_carlo,
    tc_quasi_bernoulli,
    verify_diff_relation,
    verify_ratio_identity,
)
from simplex_lab.transforms import flat_simplex_inverse_moment


def test_tc_dirichlet_values():
    assert tc_dirichlet(np.ones(4), [0.3, 1.0, 2.0, 0.7]) == 1.0
    assert tc_dirichlet([1.0, 2.0], [1.0, 1.0]) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        tc_dirichlet([1.0, 2.0], [1.0, 1.0], c=3.0)


def test_tc_quasi_bernoulli_k1_k2():
    # k=1: weighted harmonic average of 1/f
    a = np.array([1.0, 2.0, 3.0])
    f = np.array([1.0, 2.0, 4.0])
    want = (a / f).sum() / a.sum()
    assert tc_quasi_bernoulli(f, a, 1) == pytest.approx(want, rel=1e-14)
    # k=2: (sigma_1^2 + sigma_2) / (a (a+1))
    s = power_sums(f, a, 2)
    want2 = (s[0] ** 2 + s[1]) / (a.sum() * (a.sum() + 1))
    for method in ("compositions", "partitions"):
        assert tc_quasi_bernoulli(f, a, 2, method=method) == pytest.approx(want2, rel=1e-13)


def test_tc_quasi_bernoulli_hand_value():
    # a=(1,1), f=(1,2), k=2: sigma_1 = 1.5, sigma_2 = 1.25 -> 3.5/6
    assert tc_quasi_bernoulli([1.0, 2.0], [1.0, 1.0], 2) == pytest.approx(3.5 / 6, rel=1e-14)


def test_tc_total_mass_is_one():
    for k in (1, 2, 5):
        for method in ("compositions", "partitions"):
            v = tc_quasi_bernoulli(np.ones(3), [0.4, 1.1, 2.0], k, method=method)
            assert v == pytest.approx(1.0, rel=1e-12)


@given(
    st.integers(1, 3),
    st.integers(1, 6),
    st.integers(0, 10_000),
)
@settings(max_examples=40, deadline=None)
def test_tc_methods_agree(d, k, seed):
    gen = np.random.default_rng(seed)
    a = gen.uniform(0.3, 2.5, size=d + 1)
    f = gen.uniform(0.5, 2.0, size=d + 1)
    v1 = tc_quasi_bernoulli(f, a, k, method="compositions")
    v2 = tc_quasi_bernoulli(f, a, k, method="partitions")
    assert v1 == pytest.approx(v2, rel=1e-10)


@given(st.sampled_from([0.5, 2.0]), st.integers(1, 4))
@settings(max_examples=20, deadline=None)
def test_homogeneity(lam, k):
    a = np.array([0.7, 1.3, 2.1])
    f = np.array([1.0, 1.7, 2.9])
    base = tc_quasi_bernoulli(f, a, k)
    assert tc_quasi_bernoulli(lam * f, a, k) == pytest.approx(
        lam ** (-k) * base, rel=1e-12
    )
    based = tc_dirichlet(f, a)
    assert tc_dirichlet(lam * f, a) == pytest.approx(
        lam ** (-a.sum()) * based, rel=1e-12
    )


def test_transform_bound():
    a = np.array([0.6, 1.4, 3.0])
    f = np.array([0.8, 1.9, 2.4])
    for k in (1, 2, 4):
        assert tc_quasi_bernoulli(f, a, k) <= f.min() ** (-k) + 1e-12
    assert tc_dirichlet(f, a) <= f.min() ** (-a.sum()) + 1e-12


def test_tc_monte_carlo_constant_samples():
    pts = np.tile([1.0, 0.0, 0.0], (50, 1))
    est, se = tc_monte_carlo(pts, [2.0, 3.0, 4.0], 1.5)
    assert est == pytest.approx(2.0 ** (-1.5), rel=1e-14)
    assert se == 0.0
    with pytest.raises(ValueError):
        tc_monte_carlo(np.empty((0, 3)), [1.0, 1.0, 1.0], 1.0)


def test_tc_monte_carlo_matches_dirichlet_closed_form():
    a = [1.0, 2.0, 3.0]
    f = [1.0, 2.0, 3.0]
    pts = sample_dirichlet(a, RngStream(21), size=200_000)
    est, se = tc_monte_carlo(pts, f, sum(a))
    assert abs(est - tc_dirichlet(f, a)) <= 3 * se


def test_tc_monte_carlo_matches_qb_closed_form():
    a = [1.0, 2.0, 3.0]
    f = [1.0, 2.0, 3.0]
    k = 2
    pts = sample_quasi_bernoulli(a, k, RngStream(22), size=200_000)
    est, se = tc_monte_carlo(pts, f, k)
    assert abs(est - tc_quasi_bernoulli(f, a, k)) <= 3 * se
    # every integrand value is capped by the smallest f entry
    assert est <= min(f) ** (-k) + 1e-12


def test_verify_ratio_identity_hand_case():
    # closed product: (1/2) * (3/4) = 3/8; MC of the exponent-3 moment agrees
    rep = verify_ratio_identity([1.0, 1.0], 1, [1.0, 2.0], n=400_000, rng=RngStream(23))
    assert rep["closed"] == pytest.approx(3 / 8, rel=1e-14)
    assert rep["passed"], rep


def test_verify_ratio_identity_trivial_f():
    rep = verify_ratio_identity([1.0, 2.0], 2, [1.0, 1.0], n=1000, rng=RngStream(24))
    assert rep["closed"] == pytest.approx(1.0, rel=1e-14)
    assert rep["mc"] == pytest.approx(1.0, rel=1e-12)


def test_verify_diff_relation():
    rep = verify_diff_relation([1.0, 1.0], 1, [1.0, 2.0])
    assert rep["rel_err"] < 1e-6
    rep = verify_diff_relation([1.0, 1.0, 1.0], 2, [1.0, 2.0, 3.0])
    assert rep["rel_err"] < 1e-4


def test_diff_relation_symmetric_point():
    # at f = ones the first derivative check reduces to the weight total
    a = np.array([0.8, 1.7])
    h = 1e-6
    t = lambda v: float(np.prod(v ** (-a)))  # noqa: E731
    numeric = -(t(np.ones(2) + h) - t(np.ones(2) - h)) / (2 * h)
    assert numeric == pytest.approx(a.sum(), rel=1e-8)


def test_face_mass_values():
    assert face_mass([0.4, 1.1], 2.3, []) == pytest.approx(1.0, rel=1e-14)
    assert face_mass([0.5, 0.5], 2, [1]) == pytest.approx(3 / 8, rel=1e-12)
    # beta-function ratio form of the d=1 endpoint mass
    from scipy.special import betaln

    a0, a1, c = 0.7, 1.9, 1.3
    want = np.exp(betaln(a0 + c, a1) - betaln(a0, a1))
    assert face_mass([a0, a1], c, [1]) == pytest.approx(want, rel=1e-12)


def test_face_mass_matches_face_weights_for_integer_order():
    a = (1.0, 2.0, 3.0)
    for k in (1, 2, 3):
        fw = face_weights(k, a)
        for zero_set in [(0,), (2,), (0, 1)]:
            agg = sum(w for face, w in fw.items() if not set(zero_set) & set(face))
            assert face_mass(a, k, zero_set) == pytest.approx(agg, abs=1e-12)


def test_fc_uniform_values():
    # hand integral: d=1, c -> 0 limit of int dx/(2-x)^2 on a segment
    val, se = fc_uniform([2.0, 1.0], 1e-9)
    assert se is None
    assert val == pytest.approx(0.5, rel=1e-6)
    val, se = fc_uniform(np.ones(3), 2.2)
    assert val == 1.0 and se is None
    # d=1 closed form for general c
    c = 1.7
    f0, f1 = 3.0, 1.2
    want = (f1 ** (-c - 1) - f0 ** (-c - 1)) / ((c + 1) * (f0 - f1))
    val, se = fc_uniform([f0, f1], c)
    assert val == pytest.approx(want, rel=1e-12)


def test_fc_uniform_mc_agrees_with_closed():
    f = [1.0, 2.0, 3.0]
    closed, _ = fc_uniform(f, 1.3)
    mc, se = fc_uniform(f, 1.3, rng=RngStream(25), mc_n=150_000, method="mc")
    assert abs(mc - closed) <= 4 * se


def test_flat_inverse_moment_degenerate_falls_back_to_mc():
    # near-tied entries route to Monte Carlo with a reported standard error
    val, se = flat_simplex_inverse_moment(
        [1.0, 1.0 + 1e-9, 2.0], 4.5, rng=RngStream(26), mc_n=50_000
    )
    assert se is not None and se > 0
    ref, _ = flat_simplex_inverse_moment([1.0, 1.0, 2.0], 4.5, method="mc", rng=RngStream(27), mc_n=50_000)
    assert val == pytest.approx(ref, abs=6 * se)


def test_power_sums():
    s = power_sums([1.0, 2.0], [1.0, 1.0], 2)
    assert s[0] == pytest.approx(1.5)
    assert s[1] == pytest.approx(1.25)
