"""Sampling schedule, streaming statistics, and the GS/PSP estimators.

Conditions are shared across profiles: one condition drawn from the stream is
used to query every profile that still has an active index, which is what
separates data complexity (conditions drawn) from query complexity
((profile, condition) simulator calls).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from egta import kernels
from egta.concentration import empirical_bennett_radii
from egta.nfg import NormalFormGame

BOUND_KINDS = (
    "hoeffding_bonferroni",
    "uniform_empirical_bennett",
    "per_index_empirical_bennett",
)

# max floats materialized per oracle batch; keeps memory flat for big runs
_CHUNK_BUDGET = 4_000_000


@dataclass(frozen=True)
class Schedule:
    beta: float
    T_len: int
    alpha: float
    omega: float
    sizes: tuple[int, ...]
    cleanup_size: int
    log_term: float  # L = ln(3 T |Gamma| / delta)
    eps_too_large: bool = False


@dataclass
class EmpiricalAccumulator:
    """Per-index streaming count/mean/M2; the scalar reference implementation
    (the estimators use the vectorized equivalent internally)."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0
    frozen: bool = False
    frozen_estimate: float | None = None
    frozen_radius: float | None = None

    @property
    def vhat(self) -> float:
        if self.count < 2:
            raise ValueError("variance needs at least two observations")
        return self.m2 / (self.count - 1)

    def freeze(self, radius: float) -> None:
        self.frozen = True
        self.frozen_estimate = self.mean
        self.frozen_radius = radius


def ingest(acc: EmpiricalAccumulator, value: float) -> EmpiricalAccumulator:
    if acc.frozen:
        raise RuntimeError("cannot ingest into a frozen accumulator")
    acc.count += 1
    delta = value - acc.mean
    acc.mean += delta / acc.count
    acc.m2 += delta * (value - acc.mean)
    return acc


@dataclass(frozen=True)
class EstimationConfig:
    eps: float
    delta: float
    c: float
    beta: float = 2.0
    bound_kind: str = "per_index_empirical_bennett"
    master_seed: int = 0
    thread_count: int = 1

    def __post_init__(self):
        if self.eps <= 0 or not 0 < self.delta < 1 or self.c <= 0 or self.beta <= 1:
            raise ValueError("need eps > 0, delta in (0,1), c > 0, beta > 1")
        if self.bound_kind not in BOUND_KINDS:
            raise ValueError(f"unknown bound kind {self.bound_kind!r}")


@dataclass(frozen=True)
class RunReport:
    estimates: np.ndarray  # (players, profiles); NaN outside the index set
    radii: np.ndarray  # same shape
    index_mask: np.ndarray  # bool, same shape
    data_complexity: int
    query_complexity: int
    per_profile_queries: np.ndarray  # (profiles,)
    iteration_log: tuple[tuple[int, int, int, int, int, int], ...]
    # rows: (t, m_t, active_indices, active_profiles, cum_data, cum_queries)
    success: bool

    @property
    def max_radius(self) -> float:
        return float(np.nanmax(np.where(self.index_mask, self.radii, np.nan)))


def build_schedule(
    eps: float, delta: float, c: float, beta: float, game_size: int
) -> Schedule:
    if eps <= 0 or not 0 < delta < 1 or c <= 0 or beta <= 1 or game_size < 1:
        raise ValueError("invalid schedule parameters")
    ratio = 3.0 * c / (4.0 * eps)
    eps_too_large = ratio <= 1.0
    T_len = max(1, math.floor(math.log(ratio, beta))) if not eps_too_large else 1
    L = math.log(3.0 * T_len * game_size / delta)
    alpha = (2.0 * c / (3.0 * eps)) * L
    omega = (c**2 / (2.0 * eps**2)) * L
    sizes: list[int] = []
    for t in range(1, T_len + 1):
        m_t = math.ceil(alpha * beta**t)
        if sizes and m_t <= sizes[-1]:
            m_t = sizes[-1] + 1  # ceiling collision: keep strictly increasing
        sizes.append(m_t)
    cleanup = max(math.ceil(omega), sizes[-1])
    return Schedule(beta, T_len, alpha, omega, tuple(sizes), cleanup, L, eps_too_large)


def _batched_moments(oracle, profile_ranks: np.ndarray, conditions: np.ndarray):
    """Mean and sum-of-squared-deviations per index over the given conditions,
    evaluated in chunks to bound memory."""
    n_prof = profile_ranks.size
    n_players = oracle.num_players
    count = np.zeros(n_players * n_prof)
    mean = np.zeros(n_players * n_prof)
    m2 = np.zeros(n_players * n_prof)
    chunk = max(1, _CHUNK_BUDGET // max(1, n_players * n_prof))
    for start in range(0, conditions.size, chunk):
        part = conditions[start : start + chunk]
        vals = oracle.evaluate_batch(profile_ranks, part)  # (P, n_prof, k)
        b_mean = vals.mean(axis=2).reshape(-1)
        b_m2 = ((vals - vals.mean(axis=2, keepdims=True)) ** 2).sum(axis=2).reshape(-1)
        b_count = np.full(n_players * n_prof, float(part.size))
        kernels.welford_merge(count, mean, m2, b_count, b_mean, b_m2)
    return (
        count.reshape(n_players, n_prof),
        mean.reshape(n_players, n_prof),
        m2.reshape(n_players, n_prof),
    )


def gs(oracle, m: int, config: EstimationConfig) -> RunReport:
    """Global sampling: m shared conditions, every profile queried on each."""
    n_prof = oracle.num_profiles
    n_players = oracle.num_players
    game_size = n_players * n_prof
    variance_based = config.bound_kind != "hoeffding_bonferroni"
    if variance_based and m < 2:
        raise ValueError("variance-aware bounds need m >= 2")
    if m < 1:
        raise ValueError("m must be at least 1")
    conditions = kernels.condition_stream(config.master_seed, 0, m)
    ranks = np.arange(n_prof)
    count, mean, m2 = _batched_moments(oracle, ranks, conditions)

    if config.bound_kind == "hoeffding_bonferroni":
        radius = config.c * math.sqrt(math.log(2.0 * game_size / config.delta) / (2 * m))
        radii = np.full((n_players, n_prof), radius)
    else:
        vhat = np.clip(m2 / (m - 1), 0.0, config.c**2 / 4)
        delta_eff = config.delta / (3.0 * game_size)
        if config.bound_kind == "uniform_empirical_bennett":
            r = empirical_bennett_radii(m, float(vhat.max()), delta_eff, config.c)
            radii = np.full((n_players, n_prof), r.eps_mu)
        else:
            r = empirical_bennett_radii(m, vhat, delta_eff, config.c)
            radii = np.asarray(r.eps_mu)

    return RunReport(
        estimates=mean,
        radii=radii,
        index_mask=np.ones((n_players, n_prof), dtype=bool),
        data_complexity=m,
        query_complexity=m * n_prof,
        per_profile_queries=np.full(n_prof, m, dtype=np.int64),
        iteration_log=((1, m, game_size, n_prof, m, m * n_prof),),
        success=True,
    )


def psp(oracle, index_mask: np.ndarray | None, config: EstimationConfig) -> RunReport:
    """Progressive sampling with pruning over the given utility indices."""
    n_prof = oracle.num_profiles
    n_players = oracle.num_players
    if index_mask is None:
        index_mask = np.ones((n_players, n_prof), dtype=bool)
    index_mask = np.asarray(index_mask, dtype=bool)
    if index_mask.shape != (n_players, n_prof):
        raise ValueError("index mask shape mismatch")
    if not index_mask.any():
        raise ValueError("index set must be nonempty")
    game_size = int(index_mask.sum())
    schedule = build_schedule(config.eps, config.delta, config.c, config.beta, game_size)
    delta_eff = math.exp(-schedule.log_term)

    count = np.zeros((n_players, n_prof))
    mean = np.zeros((n_players, n_prof))
    m2 = np.zeros((n_players, n_prof))
    estimates = np.full((n_players, n_prof), np.nan)
    radii = np.full((n_players, n_prof), np.nan)
    active = index_mask.copy()
    per_profile_queries = np.zeros(n_prof, dtype=np.int64)
    log_rows: list[tuple[int, int, int, int, int, int]] = []
    drawn = 0
    queries = 0

    levels = list(schedule.sizes)
    if levels[-1] < schedule.cleanup_size:
        levels.append(schedule.cleanup_size)  # one omega-level cleanup round

    for t, m_t in enumerate(levels, start=1):
        profile_active = active.any(axis=0)
        prof_idx = np.flatnonzero(profile_active)
        new = kernels.condition_stream(config.master_seed, drawn, m_t - drawn)
        drawn = m_t
        b_count, b_mean, b_m2 = _batched_moments(oracle, prof_idx, new)
        ingest_mask = active[:, prof_idx]
        # frozen or out-of-set indices at a queried profile see the sample but
        # do not ingest it
        sub_count = np.ascontiguousarray(count[:, prof_idx]).reshape(-1)
        sub_mean = np.ascontiguousarray(mean[:, prof_idx]).reshape(-1)
        sub_m2 = np.ascontiguousarray(m2[:, prof_idx]).reshape(-1)
        kernels.welford_merge(
            sub_count,
            sub_mean,
            sub_m2,
            np.ascontiguousarray(np.where(ingest_mask, b_count, 0.0)).reshape(-1),
            np.ascontiguousarray(np.where(ingest_mask, b_mean, 0.0)).reshape(-1),
            np.ascontiguousarray(np.where(ingest_mask, b_m2, 0.0)).reshape(-1),
        )
        count[:, prof_idx] = sub_count.reshape(n_players, -1)
        mean[:, prof_idx] = sub_mean.reshape(n_players, -1)
        m2[:, prof_idx] = sub_m2.reshape(n_players, -1)
        per_profile_queries[prof_idx] += new.size
        queries += int(new.size) * prof_idx.size

        ap, pp = np.nonzero(active)
        if ap.size:
            vhat = m2[ap, pp] / (m_t - 1)
            vhat = np.clip(vhat, 0.0, config.c**2 / 4)
            r = empirical_bennett_radii(m_t, vhat, delta_eff, config.c)
            ok = np.asarray(r.effective_radius) <= config.eps
            freeze_p, freeze_s = ap[ok], pp[ok]
            estimates[freeze_p, freeze_s] = mean[freeze_p, freeze_s]
            radii[freeze_p, freeze_s] = np.asarray(r.effective_radius)[ok]
            active[freeze_p, freeze_s] = False
        log_rows.append(
            (t, m_t, int(active.sum()), int(active.any(axis=0).sum()), drawn, queries)
        )
        if not active.any():
            break

    return RunReport(
        estimates=estimates,
        radii=radii,
        index_mask=index_mask,
        data_complexity=drawn,
        query_complexity=queries,
        per_profile_queries=per_profile_queries,
        iteration_log=tuple(log_rows),
        success=not active.any(),
    )


def verify_uniform(report: RunReport, truth: NormalFormGame, eps: float) -> bool:
    """True iff every estimated index is within eps of the true utility."""
    truth_m = truth.utility_matrix
    if truth_m.shape != report.estimates.shape:
        raise ValueError("truth shape mismatch")
    dev = np.abs(report.estimates - truth_m)[report.index_mask]
    return bool(np.all(dev <= eps + 1e-12))
