import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egta import concentration as conc
from egta.concentration import (
    BennettRadii,
    TailParams,
    VarianceProfile,
    bennett_data_query_complexity,
    bennett_h,
    bennett_sample_complexity,
    bennett_sample_complexity_loose,
    empirical_bennett_radii,
    empirical_bennett_sufficient_m,
    hoeffding_data_complexity,
    hoeffding_query_complexity,
    hoeffding_radius,
    mean_estimation_lower_bound,
    psp_kappa,
    psp_profile_query_bound,
    psp_profile_query_bound_loose,
    variance_upper_tail,
)


def test_bennett_h_frozen_values():
    assert bennett_h(0.0) == 0.0
    assert bennett_h(1.0) == pytest.approx(2 * math.log(2) - 1)
    assert bennett_h(math.e - 1) == pytest.approx(1.0)  # e*1 - (e-1) = 1
    with pytest.raises(ValueError):
        bennett_h(-0.1)


def test_bennett_h_convex_increasing():
    xs = np.linspace(0, 5, 200)
    hs = bennett_h(xs)
    assert np.all(np.diff(hs) >= 0)
    assert np.all(np.diff(hs, 2) >= -1e-12)


def test_hoeffding_radius_frozen():
    assert hoeffding_radius(200, 0.05, 1.0) == pytest.approx(
        math.sqrt(math.log(40.0) / 400.0)
    )
    with pytest.raises(ValueError):
        hoeffding_radius(0, 0.05, 1.0)


def test_hoeffding_radius_inverts_data_complexity():
    eps, delta, c = 0.07, 0.02, 3.0
    m = hoeffding_data_complexity(eps, delta, c, 1)
    assert hoeffding_radius(int(math.ceil(m)), delta, c) <= eps + 1e-9


def test_hoeffding_data_complexity_frozen():
    assert hoeffding_data_complexity(0.1, 0.05, 1.0, 1) == pytest.approx(
        math.log(40.0) / 0.02
    )


def test_hoeffding_query_complexity_structure():
    q = hoeffding_query_complexity(0.1, 0.05, 1.0, 6, 3)
    assert q == pytest.approx(3 + 3 * hoeffding_data_complexity(0.1, 0.05, 1.0, 6))


def test_hoeffding_coverage_monte_carlo():
    rng = np.random.default_rng(11)
    m, delta, c = 64, 0.1, 1.0
    r = hoeffding_radius(m, delta, c)
    draws = rng.uniform(-0.5, 0.5, size=(4000, m))
    miss = np.abs(draws.mean(axis=1)) > r
    assert miss.mean() <= delta


def test_bennett_exact_zero_variance_sentinel():
    assert bennett_sample_complexity(0.1, 0.05, 1.0, 0.0) == 1.0


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.01, 1.0),
    st.floats(1e-6, 0.2),
    st.floats(0.5, 10.0),
    st.floats(1e-8, 1.0),
)
def test_bennett_exact_dominated_by_loose(eps, delta, c, vfrac):
    v = vfrac * c**2 / 4
    exact = bennett_sample_complexity(eps, delta, c, v)
    loose = bennett_sample_complexity_loose(eps, delta, c, v)
    assert exact <= loose + 1e-9


def test_bennett_monotone_in_variance_and_eps():
    ms = [bennett_sample_complexity(0.1, 0.05, 2.0, v) for v in (0.01, 0.1, 0.5, 1.0)]
    assert all(a <= b + 1e-12 for a, b in zip(ms, ms[1:]))
    ms = [bennett_sample_complexity(e, 0.05, 2.0, 0.5) for e in (0.4, 0.2, 0.1)]
    assert all(a <= b + 1e-12 for a, b in zip(ms, ms[1:]))


def test_bennett_coverage_monte_carlo():
    # bounded +-c/2 coin flips at the exact complexity should concentrate
    rng = np.random.default_rng(3)
    eps, delta, c = 0.15, 0.1, 1.0
    v = 0.25
    m = int(math.ceil(bennett_sample_complexity(eps, delta, c, v)))
    draws = rng.choice([-0.5, 0.5], size=(3000, m))
    miss = np.abs(draws.mean(axis=1)) > eps
    assert miss.mean() <= delta


def test_variance_profile_norms():
    v = np.array([[0.1, 0.4], [0.2, 0.3]])
    prof = VarianceProfile(v, 2.0)
    assert prof.vmax == 0.4
    assert prof.v1inf == pytest.approx(0.2 + 0.4)
    with pytest.raises(ValueError):
        VarianceProfile(np.array([[2.0]]), 1.0)  # exceeds c^2/4


def test_bennett_data_query_complexity_scales():
    prof = VarianceProfile(np.array([[0.1, 0.2], [0.05, 0.15]]), 2.0)
    data, query = bennett_data_query_complexity(0.1, 0.05, 2.0, 2, prof)
    assert data > 0 and query > 2


def test_empirical_bennett_requires_two_samples():
    with pytest.raises(ValueError):
        empirical_bennett_radii(1, 0.1, 0.01, 1.0)
    with pytest.raises(ValueError):
        empirical_bennett_radii(10, -0.1, 0.01, 1.0)


def test_empirical_bennett_scalar_and_vector_agree():
    r_s = empirical_bennett_radii(50, 0.1, 0.01, 1.0)
    r_v = empirical_bennett_radii(50, np.array([0.1, 0.2]), 0.01, 1.0)
    assert r_v.eps_mu[0] == pytest.approx(r_s.eps_mu)
    assert r_v.effective_radius[0] == pytest.approx(r_s.effective_radius)
    assert isinstance(r_s.eps_mu, float)


def test_empirical_bennett_effective_capped_by_hoeffding():
    r = empirical_bennett_radii(30, 0.25, 0.001, 1.0)
    assert r.effective_radius <= r.hoeffding_radius + 1e-15
    assert r.effective_radius <= r.eps_mu + 1e-15


def test_empirical_bennett_monotone_in_vhat_and_m():
    rs = [empirical_bennett_radii(100, v, 0.01, 1.0).eps_mu for v in (0.0, 0.05, 0.2)]
    assert rs[0] < rs[1] < rs[2]
    rs = [empirical_bennett_radii(m, 0.1, 0.01, 1.0).eps_mu for m in (10, 100, 1000)]
    assert rs[0] > rs[1] > rs[2]


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 100_000), st.floats(0.0, 0.25), st.floats(1e-12, 0.01))
def test_empirical_bennett_simplified_bound(m, vhat, delta_eff):
    """For small delta_eff the mean radius admits a two-term simplification."""
    r = empirical_bennett_radii(m, vhat, delta_eff, 1.0)
    L = math.log(1.0 / delta_eff)
    simplified = 2.0 * L / (m - 1) + math.sqrt(2 * vhat * L / m)
    assert r.eps_mu <= simplified + 1e-9


def test_empirical_bennett_coverage_small_monte_carlo():
    rng = np.random.default_rng(7)
    m, delta, c = 200, 0.05, 1.0
    trials = 2000
    draws = rng.choice([-0.5, 0.5], size=(trials, m))
    vhat = np.minimum(draws.var(axis=1, ddof=1), c**2 / 4)
    r = empirical_bennett_radii(m, vhat, delta / 3.0, c)
    ok_mean = np.abs(draws.mean(axis=1)) <= np.asarray(r.effective_radius)
    assert ok_mean.mean() >= 1 - delta
    ok_var = 0.25 <= vhat + np.asarray(r.eps_vhat)
    assert ok_var.mean() >= 1 - delta


def test_empirical_bennett_sufficient_m_suffices():
    for eps in (0.05, 0.1, 0.3):
        for v in (0.0, 0.05, 0.25):
            delta = 0.05
            m = int(math.ceil(empirical_bennett_sufficient_m(eps, delta, 1.0, v)))
            vhat_worst = min(variance_upper_tail(m, v, delta, 1.0), 0.25)
            r = empirical_bennett_radii(m, vhat_worst, delta / 3.0, 1.0)
            assert r.eps_mu <= eps + 1e-9


def test_variance_upper_tail_monte_carlo():
    rng = np.random.default_rng(19)
    m, delta, c, v = 150, 0.1, 1.0, 0.25
    bound = variance_upper_tail(m, v, delta, c)
    draws = rng.choice([-0.5, 0.5], size=(3000, m))
    vhat = draws.var(axis=1, ddof=1)
    assert np.mean(vhat > bound) <= delta


def test_psp_kappa_value():
    L = math.log(1 / 0.01)
    assert psp_kappa(0.01) == pytest.approx(4 / 3 + math.sqrt(1 + 1 / (2 * L)))


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.02, 1.0),
    st.floats(1e-8, 0.05),
    st.floats(0.5, 8.0),
    st.floats(0.0, 1.0),
    st.floats(1.1, 4.0),
)
def test_psp_bound_dominated_by_loose(eps, delta_eff, c, vfrac, beta):
    v = vfrac * c**2 / 4
    exact = psp_profile_query_bound(eps, delta_eff, c, v, beta)
    loose = psp_profile_query_bound_loose(eps, delta_eff, c, v, beta)
    assert exact <= loose + 1e-9


def test_psp_bound_monotone_in_variance():
    bs = [
        psp_profile_query_bound(0.2, 0.001, 2.0, v, 2.0) for v in (0.0, 0.2, 0.6, 1.0)
    ]
    assert all(a <= b + 1e-12 for a, b in zip(bs, bs[1:]))


def test_psp_bound_validation():
    with pytest.raises(ValueError):
        psp_profile_query_bound(0.0, 0.01, 1.0, 0.1, 2.0)
    with pytest.raises(ValueError):
        psp_profile_query_bound(0.1, 0.01, 1.0, -0.1, 2.0)
    with pytest.raises(ValueError):
        psp_profile_query_bound(0.1, 0.01, 1.0, 0.1, 1.0)


def test_mean_estimation_lower_bound_below_hoeffding():
    # the information-theoretic floor sits below the Hoeffding requirement
    eps, delta, c, size = 0.1, 0.05, 1.0, 16
    lower = mean_estimation_lower_bound(eps, delta, c**2 / 4, size)
    upper = hoeffding_data_complexity(eps, delta / size, c, 1)
    assert lower <= upper * 4  # same order; constants differ
    assert lower > 0


def test_tail_params_validation():
    TailParams(10, 0.05, 1.0)
    with pytest.raises(ValueError):
        TailParams(0, 0.05, 1.0)
    with pytest.raises(ValueError):
        TailParams(10, 1.5, 1.0)
    with pytest.raises(ValueError):
        TailParams(10, 0.05, 0.0)
