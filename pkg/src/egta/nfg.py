"""Normal-form game representation and elementary game quantities.

Utilities are stored flat in player-major order; within a player, pure
profiles are ranked mixed-radix with player 0's strategy index most
significant (C order over the strategy grid). All utilities lie in
[-c/2, c/2] where c is the declared range width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

TOL = 1e-12


@dataclass(frozen=True)
class NormalFormGame:
    strategy_counts: tuple[int, ...]
    utilities: np.ndarray  # flat, length num_players * prod(strategy_counts)
    c: float

    def __post_init__(self):
        counts = tuple(int(k) for k in self.strategy_counts)
        object.__setattr__(self, "strategy_counts", counts)
        if not counts or any(k < 1 for k in counts):
            raise ValueError("strategy_counts must be positive integers")
        if self.c <= 0:
            raise ValueError("utility range width c must be positive")
        u = np.asarray(self.utilities, dtype=np.float64).reshape(-1)
        expected = self.num_players * self.num_profiles
        if u.size != expected:
            raise ValueError(f"utilities length {u.size}, expected {expected}")
        if np.any(np.abs(u) > self.c / 2 + TOL):
            raise ValueError("utility outside declared range [-c/2, c/2]")
        u = u.copy()
        u.flags.writeable = False
        object.__setattr__(self, "utilities", u)

    @property
    def num_players(self) -> int:
        return len(self.strategy_counts)

    @property
    def num_profiles(self) -> int:
        return math.prod(self.strategy_counts)

    @property
    def num_indices(self) -> int:
        return self.num_players * self.num_profiles

    def profile_rank(self, profile: Sequence[int]) -> int:
        if len(profile) != self.num_players:
            raise IndexError("profile length mismatch")
        rank = 0
        for s, k in zip(profile, self.strategy_counts):
            if not 0 <= s < k:
                raise IndexError(f"strategy id {s} out of range for count {k}")
            rank = rank * k + s
        return rank

    def rank_to_profile(self, rank: int) -> tuple[int, ...]:
        if not 0 <= rank < self.num_profiles:
            raise IndexError("profile rank out of range")
        out = []
        for k in reversed(self.strategy_counts):
            out.append(rank % k)
            rank //= k
        return tuple(reversed(out))

    def profiles(self) -> Iterable[tuple[int, ...]]:
        for r in range(self.num_profiles):
            yield self.rank_to_profile(r)

    @property
    def utility_matrix(self) -> np.ndarray:
        """View of shape (num_players, num_profiles)."""
        return self.utilities.reshape(self.num_players, self.num_profiles)

    def player_grid(self, player: int) -> np.ndarray:
        """Player's utilities on the strategy grid (one axis per player)."""
        return self.utility_matrix[player].reshape(self.strategy_counts)


@dataclass(frozen=True)
class UtilityIndex:
    player: int
    profile: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "profile", tuple(int(s) for s in self.profile))


@dataclass(frozen=True)
class MixedProfile:
    probs: tuple[np.ndarray, ...]

    def __post_init__(self):
        cleaned = []
        for p in self.probs:
            v = np.asarray(p, dtype=np.float64)
            if np.any(v < -TOL) or abs(v.sum() - 1.0) > TOL:
                raise ValueError("mixed strategy must be a probability vector")
            v = v.copy()
            v.flags.writeable = False
            cleaned.append(v)
        object.__setattr__(self, "probs", tuple(cleaned))


@dataclass(frozen=True)
class ProfileSet:
    profiles: tuple[tuple[int, ...], ...]
    tag: float

    def __post_init__(self):
        profs = tuple(tuple(p) for p in self.profiles)
        if len(set(profs)) != len(profs):
            raise ValueError("duplicate profiles")
        object.__setattr__(self, "profiles", profs)

    def __contains__(self, profile) -> bool:
        return tuple(profile) in set(self.profiles)

    def __len__(self) -> int:
        return len(self.profiles)


def utility(game: NormalFormGame, idx: UtilityIndex) -> float:
    if not 0 <= idx.player < game.num_players:
        raise IndexError("player id out of range")
    return float(game.utility_matrix[idx.player, game.profile_rank(idx.profile)])


def regret_player(game: NormalFormGame, profile: Sequence[int], player: int) -> float:
    if not 0 <= player < game.num_players:
        raise IndexError("player id out of range")
    rank = game.profile_rank(profile)
    grid = game.player_grid(player)
    slicer = list(profile)
    slicer[player] = slice(None)
    best = float(np.max(grid[tuple(slicer)]))
    return best - float(game.utility_matrix[player, rank])


def regret(game: NormalFormGame, profile: Sequence[int]) -> float:
    return max(regret_player(game, profile, p) for p in range(game.num_players))


def regret_table(game: NormalFormGame) -> np.ndarray:
    """Regret at every pure profile, in profile-rank order."""
    per_player = np.empty((game.num_players, game.num_profiles))
    for p in range(game.num_players):
        grid = game.player_grid(p)
        best = np.max(grid, axis=p, keepdims=True)
        per_player[p] = (best - grid).reshape(-1)
    return per_player.max(axis=0)


def excess_regret(game: NormalFormGame, profile: Sequence[int]) -> float:
    table = regret_table(game)
    return float(table[game.profile_rank(profile)] - table.min())


def eps_nash_set(game: NormalFormGame, eps: float) -> ProfileSet:
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    table = regret_table(game)
    ranks = np.flatnonzero(table <= eps + TOL)
    return ProfileSet(tuple(game.rank_to_profile(int(r)) for r in ranks), eps)


def mixed_utility(game: NormalFormGame, mix: MixedProfile, player: int) -> float:
    if len(mix.probs) != game.num_players:
        raise ValueError("mixed profile player count mismatch")
    for p, v in enumerate(mix.probs):
        if v.size != game.strategy_counts[p]:
            raise ValueError(f"mixed strategy length mismatch for player {p}")
    weight = np.ones(())
    # outer product of per-player distributions over the strategy grid
    for v in mix.probs:
        weight = np.multiply.outer(weight, v)
    return float(np.sum(weight * game.player_grid(player)))


def linf_distance(g1: NormalFormGame, g2: NormalFormGame) -> float:
    if g1.strategy_counts != g2.strategy_counts:
        raise ValueError("incompatible game shapes")
    return float(np.max(np.abs(g1.utilities - g2.utilities)))
