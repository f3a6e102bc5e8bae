"""Pure NumPy implementations of the hot kernels.

Mirrors ``egta._speedups``; the two must stay bit-identical. ``egta.kernels``
picks whichever is available at import time.
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "numpy"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_PLAYER_KEY = np.uint64(0xD6E8FEB86659FD93)
_RANK_KEY = np.uint64(0xA5A3564E4B9E96A3)


def _finalize(x: np.ndarray) -> np.ndarray:
    # uint64 arithmetic is modular by design; silence overflow warnings
    with np.errstate(over="ignore"):
        x = x.astype(np.uint64, copy=True)
        x ^= x >> np.uint64(30)
        x *= _MIX1
        x ^= x >> np.uint64(27)
        x *= _MIX2
        x ^= x >> np.uint64(31)
    return x


def condition_stream(master_seed: int, start: int, count: int) -> np.ndarray:
    """Conditions start..start+count-1 of the stream keyed by master_seed."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = np.uint64(master_seed & 0xFFFFFFFFFFFFFFFF) + idx * _GOLDEN
    return _finalize(state)


def noise_sign_matrix(conditions: np.ndarray, player: int, ranks: np.ndarray) -> np.ndarray:
    """Fair-coin signs (+1/-1) for each (profile rank, condition) pair.

    The coin is a pure function of (condition, player, rank) so a shared
    condition gives consistent draws while distinct indices stay independent.
    """
    with np.errstate(over="ignore"):
        key = _finalize(
            np.uint64(player) * _PLAYER_KEY + ranks.astype(np.uint64) * _RANK_KEY
        )
        mixed = _finalize(key[:, None] ^ conditions[None, :].astype(np.uint64))
    bits = (mixed & np.uint64(1)).astype(np.float64)
    return 2.0 * bits - 1.0


def welford_merge(count, mean, m2, b_count, b_mean, b_m2):
    """Merge batch moments (b_*) into running moments in place (Chan's update)."""
    total = count + b_count
    nonzero = total > 0
    delta = b_mean - mean
    with np.errstate(invalid="ignore", divide="ignore"):
        frac = np.where(nonzero, b_count / np.maximum(total, 1), 0.0)
        mean += np.where(nonzero, delta * frac, 0.0)
        m2 += b_m2 + np.where(nonzero, delta * delta * count * frac, 0.0)
    count += b_count
    return count, mean, m2
