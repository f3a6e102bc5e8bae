import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egta import _fallback, kernels


def test_stream_is_deterministic():
    a = _fallback.condition_stream(42, 0, 100)
    b = _fallback.condition_stream(42, 0, 100)
    assert a.dtype == np.uint64
    assert np.array_equal(a, b)


def test_stream_windows_agree():
    full = _fallback.condition_stream(7, 0, 50)
    assert np.array_equal(full[20:35], _fallback.condition_stream(7, 20, 15))
    assert _fallback.condition_stream(7, 3, 0).size == 0


def test_stream_seed_sensitivity():
    assert not np.array_equal(
        _fallback.condition_stream(1, 0, 64), _fallback.condition_stream(2, 0, 64)
    )


def test_stream_values_look_uniform():
    vals = _fallback.condition_stream(0, 0, 4096)
    assert np.unique(vals).size == 4096
    bits = (vals & np.uint64(1)).astype(float)
    assert 0.45 < bits.mean() < 0.55


def test_noise_signs_pm_one_and_deterministic():
    conds = _fallback.condition_stream(5, 0, 200)
    ranks = np.arange(16, dtype=np.uint64)
    s1 = _fallback.noise_sign_matrix(conds, 0, ranks)
    s2 = _fallback.noise_sign_matrix(conds, 0, ranks)
    assert np.array_equal(s1, s2)
    assert set(np.unique(s1)) <= {-1, 1}
    assert s1.shape == (16, 200)
    # coins are roughly fair per index
    assert np.all(np.abs(s1.mean(axis=1)) < 0.3)


def test_noise_signs_vary_by_player_and_rank():
    conds = _fallback.condition_stream(5, 0, 64)
    ranks = np.arange(4, dtype=np.uint64)
    s_p0 = _fallback.noise_sign_matrix(conds, 0, ranks)
    s_p1 = _fallback.noise_sign_matrix(conds, 1, ranks)
    assert not np.array_equal(s_p0, s_p1)
    assert not np.array_equal(s_p0[0], s_p0[1])


def test_welford_merge_matches_numpy_moments(rng):
    x = rng.normal(size=300)
    a, b = x[:120], x[120:]
    count = np.array([float(a.size)])
    mean = np.array([a.mean()])
    m2 = np.array([((a - a.mean()) ** 2).sum()])
    _fallback.welford_merge(
        count,
        mean,
        m2,
        np.array([float(b.size)]),
        np.array([b.mean()]),
        np.array([((b - b.mean()) ** 2).sum()]),
    )
    assert count[0] == 300
    assert mean[0] == pytest.approx(x.mean(), rel=1e-12)
    assert m2[0] / (count[0] - 1) == pytest.approx(x.var(ddof=1), rel=1e-12)


def test_welford_merge_empty_batch(rng):
    x = rng.normal(size=10)
    count = np.array([10.0])
    mean = np.array([x.mean()])
    m2 = np.array([((x - x.mean()) ** 2).sum()])
    _fallback.welford_merge(
        count, mean, m2, np.zeros(1), np.zeros(1), np.zeros(1)
    )
    assert count[0] == 10 and mean[0] == pytest.approx(x.mean())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 40), st.integers(1, 40))
def test_welford_merge_into_empty(seed, na, nb):
    rng = np.random.default_rng(seed)
    b = rng.uniform(-1, 1, size=nb)
    count, mean, m2 = np.zeros(1), np.zeros(1), np.zeros(1)
    _fallback.welford_merge(
        count,
        mean,
        m2,
        np.array([float(nb)]),
        np.array([b.mean()]),
        np.array([((b - b.mean()) ** 2).sum()]),
    )
    assert mean[0] == pytest.approx(b.mean(), abs=1e-12)


def _speedups_or_skip():
    try:
        from egta import _speedups
    except ImportError:
        pytest.skip("compiled kernels not built")
    return _speedups


def test_compiled_stream_matches_fallback():
    sp = _speedups_or_skip()
    for seed, start, count in [(0, 0, 257), (123, 17, 100), (2**60, 5, 33)]:
        assert np.array_equal(
            sp.condition_stream(seed, start, count),
            _fallback.condition_stream(seed, start, count),
        )


def test_compiled_signs_match_fallback():
    sp = _speedups_or_skip()
    conds = _fallback.condition_stream(9, 0, 128)
    ranks = np.arange(10, dtype=np.uint64)
    for player in range(3):
        assert np.array_equal(
            sp.noise_sign_matrix(conds, player, ranks),
            _fallback.noise_sign_matrix(conds, player, ranks),
        )


def test_compiled_welford_matches_fallback(rng):
    sp = _speedups_or_skip()
    n = 50
    args = [rng.uniform(1, 100, size=n), rng.normal(size=n), rng.uniform(0, 10, size=n)]
    batch = [rng.uniform(1, 100, size=n), rng.normal(size=n), rng.uniform(0, 10, size=n)]
    a1 = [x.copy() for x in args]
    a2 = [x.copy() for x in args]
    sp.welford_merge(*a1, *[x.copy() for x in batch])
    _fallback.welford_merge(*a2, *[x.copy() for x in batch])
    for got, want in zip(a1, a2):
        assert np.allclose(got, want, rtol=1e-13, atol=1e-13)


def test_active_implementation_exposed():
    assert kernels.IMPLEMENTATION in ("cython", "numpy")
