"""simplex-lab: Dirichlet and quasi-Bernoulli laws on the simplex.

Exact weights and transforms, reproducible samplers (numba-accelerated with
a pure-numpy fallback), a stationary Markov chain with an exact backward
series sampler, random atomic probabilities on [0, 1], and the statistical
machinery that cross-checks all of it.
"""

from ._backend import active_backend, set_backend
from .chain import ChainConfig, backward_series_sample, chain_step, iter_chain, run_chain
from .core import (
    EnumerationTooLargeError,
    all_composition_weights,
    check_simplex,
    composition_weight,
    enumerate_compositions,
    enumerate_portraits,
    ewens_pmf,
    face_weights,
    pk_polynomial,
    pochhammer,
    portrait_to_block_sizes,
)
from .nu_measure import (
    NuSpec,
    SignedMeasureError,
    exists_probability,
    nu_weights,
    verify_cp,
)
from .process import AtomicProbability, BaseMeasure, sample_qb_process, tc_process, verify_pber
from .rng import RngStream
from .samplers import (
    face_of_point,
    sample_bernoulli_vertex,
    sample_crp_portrait,
    sample_dirichlet,
    sample_face_uniform,
    sample_nu,
    sample_quasi_bernoulli,
)
from .stats import (
    TestReport,
    chi_square_face_test,
    dirichlet_moment_oracle,
    empirical_moment,
    energy_two_sample_test,
    face_counts,
    moment_indices,
)
from .transforms import (
    face_mass,
    fc_uniform,
    power_sums,
    tc_dirichlet,
    tc_monte_carlo,
    tc_quasi_bernoulli,
    verify_diff_relation,
    verify_ratio_identity,
)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "AtomicProbability",
    "BaseMeasure",
    "ChainConfig",
    "EnumerationTooLargeError",
    "NuSpec",
    "RngStream",
    "SignedMeasureError",
    "TestReport",
    "active_backend",
    "all_composition_weights",
    "backward_series_sample",
    "chain_step",
    "check_simplex",
    "chi_square_face_test",
    "composition_weight",
    "dirichlet_moment_oracle",
    "empirical_moment",
    "energy_two_sample_test",
    "enumerate_compositions",
    "enumerate_portraits",
    "ewens_pmf",
    "exists_probability",
    "face_counts",
    "face_mass",
    "face_of_point",
    "face_weights",
    "fc_uniform",
    "iter_chain",
    "moment_indices",
    "nu_weights",
    "pk_polynomial",
    "pochhammer",
    "portrait_to_block_sizes",
    "power_sums",
    "run_chain",
    "run_suite",
    "sample_bernoulli_vertex",
    "sample_crp_portrait",
    "sample_dirichlet",
    "sample_face_uniform",
    "sample_nu",
    "sample_qb_process",
    "sample_quasi_bernoulli",
    "set_backend",
    "tc_dirichlet",
    "tc_monte_carlo",
    "tc_process",
    "tc_quasi_bernoulli",
    "verify_cp",
    "verify_diff_relation",
    "verify_pber",
    "verify_ratio_identity",
]
