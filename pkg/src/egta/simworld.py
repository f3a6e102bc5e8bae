"""Conditional-game oracles, noise models, and game generators."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from egta import kernels
from egta.nfg import NormalFormGame
from egta.poker import discard_game_tables


@dataclass(frozen=True)
class Condition:
    """One entry of the shared condition stream (a 64-bit value)."""

    value: int


def condition_stream(master_seed: int, start: int, count: int) -> np.ndarray:
    return kernels.condition_stream(master_seed, start, count)


@dataclass(frozen=True)
class ConditionalGameOracle:
    strategy_counts: tuple[int, ...]
    c: float
    batch_fn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    truth: NormalFormGame | None = None
    true_variances: np.ndarray | None = None  # (players, profiles)

    @property
    def num_players(self) -> int:
        return len(self.strategy_counts)

    @property
    def num_profiles(self) -> int:
        return math.prod(self.strategy_counts)

    def evaluate_batch(self, profile_ranks: np.ndarray, conditions: np.ndarray) -> np.ndarray:
        """Utility tensor of shape (players, len(profile_ranks), len(conditions))."""
        return self.batch_fn(
            np.asarray(profile_ranks, dtype=np.int64),
            np.asarray(conditions, dtype=np.uint64),
        )

    def evaluate(self, profile: Sequence[int], condition: Condition | int) -> np.ndarray:
        """Utility vector for a single (profile, condition) query."""
        if self.truth is not None:
            rank = self.truth.profile_rank(profile)
        else:
            rank = _rank_of(self.strategy_counts, profile)
        value = condition.value if isinstance(condition, Condition) else int(condition)
        out = self.evaluate_batch(
            np.array([rank], dtype=np.int64), np.array([value], dtype=np.uint64)
        )
        return out[:, 0, 0]


def _rank_of(counts: Sequence[int], profile: Sequence[int]) -> int:
    rank = 0
    for s, k in zip(profile, counts):
        if not 0 <= s < k:
            raise IndexError("strategy id out of range")
        rank = rank * k + s
    return rank


@dataclass(frozen=True)
class NoiseSpec:
    d: float
    scale_alpha: float
    scale_beta: float
    scales: np.ndarray | None = None  # (players, profiles), each in [0, 1]

    def __post_init__(self):
        if self.d <= 0 or self.scale_alpha <= 0 or self.scale_beta <= 0:
            raise ValueError("noise magnitude and Beta shapes must be positive")
        if self.scales is not None:
            s = np.asarray(self.scales, dtype=np.float64)
            if np.any(s < 0) or np.any(s > 1):
                raise ValueError("noise scales must lie in [0, 1]")
            object.__setattr__(self, "scales", s)

    def realized(self, num_players: int, num_profiles: int, seed: int) -> "NoiseSpec":
        if self.scales is not None:
            return self
        rng = np.random.default_rng(seed)
        scales = rng.beta(self.scale_alpha, self.scale_beta, size=(num_players, num_profiles))
        return NoiseSpec(self.d, self.scale_alpha, self.scale_beta, scales)


def additive_noise_oracle(
    base: NormalFormGame, noise: NoiseSpec, master_seed: int = 0
) -> ConditionalGameOracle:
    """Oracle returning base utility plus a scaled fair-coin offset.

    The +-d/2 coin is a pure function of (condition, player, profile), so a
    shared condition yields consistent queries across profiles while the
    per-index coins stay independent. The per-index scale gamma is drawn once
    (Beta(scale_alpha, scale_beta)) if the spec does not carry realized scales.
    """
    spec = noise.realized(base.num_players, base.num_profiles, master_seed)
    base_m = base.utility_matrix
    half = spec.d / 2.0

    def batch(ranks: np.ndarray, conditions: np.ndarray) -> np.ndarray:
        out = np.empty((base.num_players, ranks.size, conditions.size))
        uranks = ranks.astype(np.uint64)
        for p in range(base.num_players):
            signs = kernels.noise_sign_matrix(conditions, p, uranks)
            out[p] = base_m[p, ranks, None] + spec.scales[p, ranks, None] * half * signs
        return out

    return ConditionalGameOracle(
        strategy_counts=base.strategy_counts,
        c=base.c + spec.d,
        batch_fn=batch,
        truth=base,
        true_variances=spec.scales**2 * spec.d**2 / 4.0,
    )


def deterministic_oracle(base: NormalFormGame) -> ConditionalGameOracle:
    base_m = base.utility_matrix

    def batch(ranks: np.ndarray, conditions: np.ndarray) -> np.ndarray:
        return np.repeat(base_m[:, ranks, None], conditions.size, axis=2)

    return ConditionalGameOracle(
        strategy_counts=base.strategy_counts,
        c=base.c,
        batch_fn=batch,
        truth=base,
        true_variances=np.zeros_like(base_m),
    )


def gen_random_zero_sum(k: int, u0: float, seed: int) -> NormalFormGame:
    """Two-player zero-sum game with iid uniform utilities for player 1."""
    if k < 1 or u0 <= 0:
        raise ValueError("need k >= 1 and u0 > 0")
    rng = np.random.default_rng(seed)
    u1 = rng.uniform(-u0 / 2, u0 / 2, size=k * k)
    return NormalFormGame((k, k), np.concatenate([u1, -u1]), u0)


def _identity_cost(n: int) -> float:
    return float(n)


def gen_random_congestion(
    num_players: int,
    num_facilities: int,
    k_max: int,
    powerlaw_alpha: float,
    u0: float,
    seed: int,
    cost_fn: Callable[[int], float] = _identity_cost,
) -> NormalFormGame:
    """Random congestion game; cost of a facility used by n players is
    cost_fn(n) (default n), utilities are negated costs rescaled into
    (-u0/2, u0/2). Facility e (1-based) joins a strategy with probability
    powerlaw_alpha**e, clustering preferences on low-index facilities."""
    if num_players < 1 or num_facilities < 1 or k_max < 1:
        raise ValueError("counts must be positive")
    if not 0 < powerlaw_alpha <= 1:
        raise ValueError("powerlaw_alpha must lie in (0, 1]")
    if u0 <= 0:
        raise ValueError("u0 must be positive")
    rng = np.random.default_rng(seed)
    incl = powerlaw_alpha ** np.arange(1, num_facilities + 1)

    def draw_strategy() -> frozenset[int]:
        while True:
            mask = rng.random(num_facilities) < incl
            if mask.any():
                return frozenset(np.flatnonzero(mask).tolist())

    strategies: list[list[frozenset[int]]] = []
    for _ in range(num_players):
        want = int(rng.integers(1, k_max + 1))
        want = min(want, 2**num_facilities - 1)
        chosen: list[frozenset[int]] = []
        while len(chosen) < want:
            s = draw_strategy()
            if s not in chosen:
                chosen.append(s)
        strategies.append(chosen)

    counts = tuple(len(s) for s in strategies)
    n_prof = math.prod(counts)
    costs = np.empty((num_players, n_prof))
    for rank in range(n_prof):
        rest, profile = rank, []
        for k in reversed(counts):
            profile.append(rest % k)
            rest //= k
        profile.reverse()
        chosen = [strategies[p][profile[p]] for p in range(num_players)]
        load: dict[int, int] = {}
        for s in chosen:
            for e in s:
                load[e] = load.get(e, 0) + 1
        for p in range(num_players):
            costs[p, rank] = sum(cost_fn(load[e]) for e in chosen[p])

    utilities = -costs
    lo, hi = utilities.min(), utilities.max()
    if hi - lo < 1e-15:
        scaled = np.zeros_like(utilities)
    else:
        mid = (hi + lo) / 2.0
        scaled = (utilities - mid) * (u0 * (1 - 1e-9) / (hi - lo))
    return NormalFormGame(counts, scaled.reshape(-1), u0)


def _fixture_from_strategies(strategy_sets: list[list[set[int]]]) -> NormalFormGame:
    counts = tuple(len(s) for s in strategy_sets)
    n_players = len(strategy_sets)
    n_prof = math.prod(counts)
    utilities = np.empty((n_players, n_prof))
    for rank in range(n_prof):
        rest, profile = rank, []
        for k in reversed(counts):
            profile.append(rest % k)
            rest //= k
        profile.reverse()
        chosen = [strategy_sets[p][profile[p]] for p in range(n_players)]
        load: dict[int, int] = {}
        for s in chosen:
            for e in s:
                load[e] = load.get(e, 0) + 1
        for p in range(n_players):
            utilities[p, rank] = -sum(load[e] for e in chosen[p])
    c = 2.0 * max(1.0, float(np.abs(utilities).max()))
    return NormalFormGame(counts, utilities.reshape(-1), c)


def fixture_gamma1() -> NormalFormGame:
    """Three-player congestion fixture with pure Nash {(0,0,0), (1,1,1)}."""
    return _fixture_from_strategies(
        [
            [{0, 3}, {1, 5, 4}],
            [{1, 4}, {2, 3, 5}],
            [{2, 5}, {0, 3, 4}],
        ]
    )


def fixture_gamma2() -> NormalFormGame:
    """Two-player congestion fixture with unique pure Nash (0,0)."""
    return _fixture_from_strategies(
        [
            [{0, 3}, {1, 4, 5}],
            [{1, 4}, {2, 3, 5}],
        ]
    )


def gen_counterexample(gamma: float, c_param: float) -> NormalFormGame:
    """2x2 family whose extreme-equilibrium welfares jump by c_param across an
    arbitrarily small utility perturbation (2|gamma|)."""
    g, c = gamma, c_param
    row = [g, -g, g - c, c - g]
    col = [-g, g, -g, g]
    width = 2.0 * (abs(g) + abs(c))
    return NormalFormGame((2, 2), np.array(row + col), width if width > 0 else 1.0)


def gen_poker_discard(
    hand_p1: Sequence[str],
    hand_p2: Sequence[str],
    k: int,
    tiebreak: str = "high_card",
    seed: int = 0,
) -> ConditionalGameOracle:
    """Two-player discard poker game with exact enumeration ground truth.

    A condition indexes the lexicographic list of dealer subsets (arbitrary
    64-bit conditions are reduced modulo the subset count).
    """
    outcomes, dealer_subsets, d1, d2 = discard_game_tables(hand_p1, hand_p2, k, tiebreak)
    n1, n2 = len(d1), len(d2)
    n_deal = len(dealer_subsets)
    flat = outcomes.reshape(n1 * n2, n_deal)  # profile rank = i * n2 + j
    mean = flat.mean(axis=1)
    var = flat.var(axis=1)  # population variance: exact over the finite deal set
    truth = NormalFormGame((n1, n2), np.concatenate([mean, -mean]), 2.0)
    true_vars = np.stack([var, var])

    def batch(ranks: np.ndarray, conditions: np.ndarray) -> np.ndarray:
        deal_idx = (conditions % np.uint64(n_deal)).astype(np.int64)
        u1 = flat[np.ix_(ranks, deal_idx)]
        return np.stack([u1, -u1])

    return ConditionalGameOracle(
        strategy_counts=(n1, n2),
        c=2.0,
        batch_fn=batch,
        truth=truth,
        true_variances=true_vars,
    )


def perturb_uniform(
    base: NormalFormGame, eps: float, seed: int, distribution: str = "uniform"
) -> NormalFormGame:
    """Independent per-index offsets on [-eps, eps] from the named law."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if eps == 0:
        return base
    rng = np.random.default_rng(seed)
    n = base.utilities.size
    if distribution == "uniform":
        offsets = rng.uniform(-eps, eps, size=n)
    elif distribution == "parabolic":
        offsets = (2.0 * rng.beta(2.0, 2.0, size=n) - 1.0) * eps
    elif distribution == "arcsine":
        offsets = (2.0 * rng.beta(0.5, 0.5, size=n) - 1.0) * eps
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    return NormalFormGame(
        base.strategy_counts, base.utilities + offsets, base.c + 2 * eps
    )
