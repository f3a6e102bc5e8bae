"""Five-card poker hand evaluation and the two-player discard game.

Each player holds five fixed cards and simultaneously discards k of them; the
dealer then reveals d = k community cards drawn from the 42 cards neither
player holds, and each player scores the best interpretation of their kept
5 - k cards plus the dealer cards (a single 5-card hand). Win/loss/tie pays
+1/-1/0.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

RANKS = {str(n): n for n in range(2, 11)} | {"J": 11, "Q": 12, "K": 13, "A": 14}
SUITS = "CDHS"

CATEGORY_NAMES = (
    "high_card",
    "one_pair",
    "two_pair",
    "three_of_a_kind",
    "straight",
    "flush",
    "full_house",
    "four_of_a_kind",
    "straight_flush",
)


def parse_card(token: str) -> tuple[int, int]:
    """Card token like 'AS' or '10H' -> (rank 2..14, suit 0..3)."""
    token = token.strip().upper()
    rank_part, suit_part = token[:-1], token[-1:]
    if rank_part not in RANKS or suit_part not in SUITS:
        raise ValueError(f"bad card token {token!r}")
    return RANKS[rank_part], SUITS.index(suit_part)


def card_token(card: tuple[int, int]) -> str:
    rank, suit = card
    inv = {v: k for k, v in RANKS.items()}
    return f"{inv[rank]}{SUITS[suit]}"


def hand_score(cards) -> tuple[int, tuple[int, ...]]:
    """(category, within-category rank tuple) for exactly five cards.

    Categories order straight flush > four of a kind > full house > flush >
    straight > three of a kind > two pair > one pair > high card; the rank
    tuple resolves ties within a category by comparing high cards/kickers.
    """
    if len(cards) != 5:
        raise ValueError("poker hands are scored on exactly five cards")
    ranks = sorted((c[0] for c in cards), reverse=True)
    suits = {c[1] for c in cards}
    flush = len(suits) == 1

    distinct = sorted(set(ranks), reverse=True)
    straight_high = 0
    if len(distinct) == 5:
        if distinct[0] - distinct[4] == 4:
            straight_high = distinct[0]
        elif distinct == [14, 5, 4, 3, 2]:  # wheel
            straight_high = 5

    counts: dict[int, int] = {}
    for r in ranks:
        counts[r] = counts.get(r, 0) + 1
    # group ranks by multiplicity, highest multiplicity then highest rank first
    groups = sorted(counts.items(), key=lambda kv: (-kv[1], -kv[0]))
    shape = tuple(n for _, n in groups)
    by_group = tuple(r for r, _ in groups)

    if flush and straight_high:
        return 8, (straight_high,)
    if shape == (4, 1):
        return 7, by_group
    if shape == (3, 2):
        return 6, by_group
    if flush:
        return 5, tuple(ranks)
    if straight_high:
        return 4, (straight_high,)
    if shape == (3, 1, 1):
        return 3, by_group
    if shape == (2, 2, 1):
        return 2, by_group
    if shape == (2, 1, 1, 1):
        return 1, by_group
    return 0, tuple(ranks)


def compare_hands(h1, h2, tiebreak: str) -> int:
    """-1/0/+1 from player 1's perspective.

    tiebreak='high_card' compares the full within-category rank tuple when the
    categories match; tiebreak='none' scores equal categories as a tie.
    """
    if tiebreak not in ("high_card", "none"):
        raise ValueError(f"unknown tiebreak {tiebreak!r}")
    c1, t1 = hand_score(h1)
    c2, t2 = hand_score(h2)
    if c1 != c2:
        return 1 if c1 > c2 else -1
    if tiebreak == "none":
        return 0
    if t1 == t2:
        return 0
    return 1 if t1 > t2 else -1


def _full_deck():
    return [(r, s) for r in range(2, 15) for s in range(4)]


def discard_game_tables(hand1, hand2, k: int, tiebreak: str):
    """Exact outcome table for the discard game.

    Returns (outcomes, dealer_subsets, strategies1, strategies2) where
    outcomes[i, j, y] is player 1's payoff when the players discard the i-th
    and j-th lexicographic k-subsets of their hands and the dealer reveals the
    y-th lexicographic d-subset of the remaining 42 cards.
    """
    h1 = [parse_card(t) if isinstance(t, str) else tuple(t) for t in hand1]
    h2 = [parse_card(t) if isinstance(t, str) else tuple(t) for t in hand2]
    if len(h1) != 5 or len(h2) != 5 or len(set(h1) | set(h2)) != 10:
        raise ValueError("need ten distinct cards, five per player")
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    d = k
    held = set(h1) | set(h2)
    remaining = sorted(c for c in _full_deck() if c not in held)
    assert len(remaining) == 42
    dealer_subsets = list(combinations(remaining, d))
    discards1 = list(combinations(range(5), k))
    discards2 = list(combinations(range(5), k))
    outcomes = np.empty((len(discards1), len(discards2), len(dealer_subsets)), dtype=np.float64)
    kept1 = [[h1[i] for i in range(5) if i not in disc] for disc in discards1]
    kept2 = [[h2[i] for i in range(5) if i not in disc] for disc in discards2]
    for y, dealer in enumerate(dealer_subsets):
        scored1 = [compare_key(kp + list(dealer)) for kp in kept1]
        scored2 = [compare_key(kp + list(dealer)) for kp in kept2]
        for i, s1 in enumerate(scored1):
            for j, s2 in enumerate(scored2):
                outcomes[i, j, y] = _compare_keys(s1, s2, tiebreak)
    return outcomes, dealer_subsets, discards1, discards2


def compare_key(cards) -> tuple[int, tuple[int, ...]]:
    return hand_score(cards)


def _compare_keys(s1, s2, tiebreak: str) -> float:
    c1, t1 = s1
    c2, t2 = s2
    if c1 != c2:
        return 1.0 if c1 > c2 else -1.0
    if tiebreak == "none" or t1 == t2:
        return 0.0
    return 1.0 if t1 > t2 else -1.0


def num_dealer_subsets(d: int) -> int:
    return math.comb(42, d)
