"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's vectorized code paths:
regret via exhaustive double loops, welfare via direct arithmetic, so tests
compare two independent routes to the same quantity.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from egta.nfg import NormalFormGame


def brute_regret_player(game: NormalFormGame, profile, player) -> float:
    """Exhaustive unilateral-deviation enumeration."""
    base = game.utility_matrix[player, game.profile_rank(profile)]
    best = -np.inf
    for s in range(game.strategy_counts[player]):
        alt = list(profile)
        alt[player] = s
        best = max(best, game.utility_matrix[player, game.profile_rank(alt)])
    return float(best - base)


def brute_regret(game: NormalFormGame, profile) -> float:
    return max(
        brute_regret_player(game, profile, p) for p in range(game.num_players)
    )


def brute_nash(game: NormalFormGame, eps: float = 0.0):
    out = []
    for profile in itertools.product(*(range(k) for k in game.strategy_counts)):
        if brute_regret(game, profile) <= eps + 1e-12:
            out.append(profile)
    return out


def random_game(rng: np.random.Generator, counts, c: float = 2.0) -> NormalFormGame:
    n = len(counts) * int(np.prod(counts))
    return NormalFormGame(tuple(counts), rng.uniform(-c / 2, c / 2, size=n), c)


def random_positive_game(rng: np.random.Generator, counts, lo=0.1, hi=1.1) -> NormalFormGame:
    n = len(counts) * int(np.prod(counts))
    return NormalFormGame(tuple(counts), rng.uniform(lo, hi, size=n), 2 * hi + 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)
