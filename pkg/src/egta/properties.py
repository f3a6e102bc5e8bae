"""Welfare functions, stability notions, and interval bounds for extreme equilibria.

Covers power-mean/Gini/utilitarian welfare, adversarial and maximin values,
Lambda-stable outcomes (MD/MC), the anarchy gap, a registry of Lipschitz
constants, and the interval bounds derived from a uniform approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from egta.nfg import TOL, NormalFormGame, eps_nash_set, regret_table


@dataclass(frozen=True)
class WelfareSpec:
    kind: str  # power_mean | gini | utilitarian_sum
    rho: float | None = None
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("power_mean", "gini", "utilitarian_sum"):
            raise ValueError(f"unknown welfare kind {self.kind!r}")
        if self.kind == "power_mean":
            if self.rho is None or self.weights is None:
                raise ValueError("power_mean requires rho and weights")
        if self.kind == "gini":
            if self.weights is None:
                raise ValueError("gini requires weights")
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if any(x < -TOL for x in w) or abs(sum(w) - 1.0) > TOL:
                raise ValueError("weights must be a stochastic vector")
            if self.kind == "gini" and any(
                w[i] < w[i + 1] - TOL for i in range(len(w) - 1)
            ):
                raise ValueError("gini weights must be nonincreasing")
            object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class LipschitzConstant:
    value: float | None
    discontinuous: bool = False

    def __post_init__(self):
        if not self.discontinuous and (self.value is None or self.value <= 0):
            raise ValueError("Lipschitz constant must be positive or flagged")


@dataclass(frozen=True)
class IntervalBound:
    lower: float
    upper: float
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.flags and math.isfinite(self.lower) and math.isfinite(self.upper):
            if self.lower > self.upper + TOL:
                raise ValueError("interval lower exceeds upper")

    @property
    def valid(self) -> bool:
        return not self.flags


@dataclass(frozen=True)
class RefinedExtremeBounds:
    """Upper bound on MD and lower bound on MC (inner bounds, so md_upper may
    sit below mc_lower; they do not form a single interval)."""

    md_upper: float
    mc_lower: float
    flags: tuple[str, ...] = ()


def _power_mean_vector(u: np.ndarray, rho: float, w: np.ndarray) -> np.ndarray:
    """rho-power-mean along the last axis; domain checks done by callers."""
    if rho == 0.0:
        return np.exp(np.sum(w * np.log(u), axis=-1))
    if math.isinf(rho):
        return u.max(axis=-1) if rho > 0 else u.min(axis=-1)
    s = np.sum(w * u**rho, axis=-1)
    # odd integer rho admits negative utilities; take the signed real root
    return np.sign(s) * np.abs(s) ** (1.0 / rho)


def _check_power_mean_domain(u: np.ndarray, rho: float) -> None:
    if rho < 1 and np.any(u <= 0):
        bad = np.argwhere(u <= 0)[0]
        raise ValueError(
            f"power-mean with rho < 1 requires positive utilities (offending index {tuple(bad)})"
        )
    if rho >= 1 and not math.isinf(rho) and rho != int(rho) and np.any(u < 0):
        bad = np.argwhere(u < 0)[0]
        raise ValueError(
            f"power-mean with fractional rho >= 1 requires nonnegative utilities "
            f"(offending index {tuple(bad)})"
        )


def welfare_table(game: NormalFormGame, spec: WelfareSpec) -> np.ndarray:
    """Welfare at every pure profile, in profile-rank order."""
    u = game.utility_matrix.T  # (profiles, players)
    if spec.kind == "utilitarian_sum":
        return u.sum(axis=-1)
    if spec.kind == "gini":
        w = np.asarray(spec.weights)
        if w.size != game.num_players:
            raise ValueError("gini weights length mismatch")
        return np.sort(u, axis=-1) @ w
    rho = float(spec.rho)
    w = np.asarray(spec.weights)
    if w.size != game.num_players:
        raise ValueError("power_mean weights length mismatch")
    if rho != 1.0:
        _check_power_mean_domain(u, rho)
    return _power_mean_vector(u, rho, w)


def welfare(game: NormalFormGame, profile: Sequence[int], spec: WelfareSpec) -> float:
    rank = game.profile_rank(profile)
    u = game.utility_matrix[:, rank]
    if spec.kind == "utilitarian_sum":
        return float(u.sum())
    if spec.kind == "gini":
        return float(np.sort(u) @ np.asarray(spec.weights))
    rho = float(spec.rho)
    if rho != 1.0:
        _check_power_mean_domain(u, rho)
    return float(_power_mean_vector(u, rho, np.asarray(spec.weights)))


def adversarial_value(game: NormalFormGame, player: int, strategy_id: int) -> float:
    if not 0 <= player < game.num_players:
        raise IndexError("player id out of range")
    if not 0 <= strategy_id < game.strategy_counts[player]:
        raise IndexError("strategy id out of range")
    grid = game.player_grid(player)
    return float(np.min(np.take(grid, strategy_id, axis=player)))


def maximin(game: NormalFormGame, player: int) -> tuple[float, int]:
    values = [
        adversarial_value(game, player, s) for s in range(game.strategy_counts[player])
    ]
    best = max(values)
    return best, values.index(best)


def _stability_objective(
    game: NormalFormGame, spec: WelfareSpec, Lambda: float, use_excess: bool
) -> tuple[np.ndarray, np.ndarray]:
    w = welfare_table(game, spec)
    r = regret_table(game)
    if use_excess:
        r = r - r.min()
    return w, r


def md_lambda(
    game: NormalFormGame,
    spec: WelfareSpec,
    Lambda: float,
    use_excess: bool = False,
) -> tuple[float, tuple[int, ...]]:
    """Most dissonant Lambda-stable value: min over profiles of W + Lambda*R."""
    if Lambda < 0:
        raise ValueError("Lambda must be nonnegative")
    w, r = _stability_objective(game, spec, Lambda, use_excess)
    if math.isinf(Lambda):
        # limit: among regret minimizers, the minimum welfare
        eligible = r <= r.min() + TOL
        masked = np.where(eligible, w, np.inf)
        rank = int(np.argmin(masked))
        return float(w[rank]), game.rank_to_profile(rank)
    obj = w + Lambda * r
    rank = int(np.argmin(obj))
    return float(obj[rank]), game.rank_to_profile(rank)


def mc_lambda(
    game: NormalFormGame,
    spec: WelfareSpec,
    Lambda: float,
    use_excess: bool = False,
) -> tuple[float, tuple[int, ...]]:
    """Most cooperative Lambda-stable value: max over profiles of W - Lambda*R."""
    if Lambda < 0:
        raise ValueError("Lambda must be nonnegative")
    w, r = _stability_objective(game, spec, Lambda, use_excess)
    if math.isinf(Lambda):
        eligible = r <= r.min() + TOL
        masked = np.where(eligible, w, -np.inf)
        rank = int(np.argmax(masked))
        return float(w[rank]), game.rank_to_profile(rank)
    obj = w - Lambda * r
    rank = int(np.argmax(obj))
    return float(obj[rank]), game.rank_to_profile(rank)


def anarchy_gap(game: NormalFormGame, spec: WelfareSpec, Lambda: float) -> float:
    """Optimal welfare minus the most dissonant Lambda-stable value."""
    best, _ = mc_lambda(game, spec, 0.0)
    dissonant, _ = md_lambda(game, spec, Lambda)
    return best - dissonant


def welfare_lipschitz(spec: WelfareSpec, num_players: int) -> LipschitzConstant:
    if spec.kind == "utilitarian_sum":
        return LipschitzConstant(float(num_players))
    if spec.kind == "gini":
        return LipschitzConstant(1.0)
    rho = float(spec.rho)
    if rho >= 1:
        return LipschitzConstant(1.0)
    if rho < 0:
        return LipschitzConstant(float(max(w ** (1.0 / rho) for w in spec.weights)))
    return LipschitzConstant(None, discontinuous=True)


def lipschitz_constant(
    kind: str,
    *,
    spec: WelfareSpec | None = None,
    num_players: int | None = None,
    Lambda: float | None = None,
    use_excess: bool = False,
) -> LipschitzConstant:
    if kind == "regret":
        return LipschitzConstant(2.0)
    if kind == "gini":
        return LipschitzConstant(1.0)
    if kind == "adversarial":
        return LipschitzConstant(1.0)
    if kind == "utilitarian_sum":
        return LipschitzConstant(float(num_players))
    if kind == "power_mean":
        return welfare_lipschitz(spec, num_players if num_players else len(spec.weights))
    if kind in ("md_lambda", "mc_lambda"):
        lam_w = welfare_lipschitz(spec, num_players)
        if lam_w.discontinuous:
            return lam_w
        mult = 4.0 if use_excess else 2.0
        return LipschitzConstant(lam_w.value + mult * Lambda)
    if kind == "anarchy_gap":
        lam_w = welfare_lipschitz(spec, num_players)
        if lam_w.discontinuous:
            return lam_w
        return LipschitzConstant(2.0 * (lam_w.value + Lambda))
    raise ValueError(f"unknown property kind {kind!r}")


def property_error_bound(lambda_const: LipschitzConstant, eps: float) -> float:
    if lambda_const.discontinuous:
        raise ValueError("no error bound for a discontinuous property")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return lambda_const.value * eps


@dataclass(frozen=True)
class ContainmentReport:
    min_side_inner: bool
    min_side_outer: bool
    max_side_inner: bool
    max_side_outer: bool

    @property
    def ok(self) -> bool:
        return (
            self.min_side_inner
            and self.min_side_outer
            and self.max_side_inner
            and self.max_side_outer
        )


def witness_containment_check(
    values1: np.ndarray,
    values2: np.ndarray,
    lambda_const: LipschitzConstant,
    eps: float,
) -> ContainmentReport:
    """Check F_0(v1) <= F_{le}(v2) <= F_{2le}(v1) for near-argmin sets
    F_a(v) = {s : v(s) <= min v + a}, and the sup-side analogue."""
    if lambda_const.discontinuous:
        raise ValueError("containment check needs a finite Lipschitz constant")
    v1 = np.asarray(values1, dtype=np.float64)
    v2 = np.asarray(values2, dtype=np.float64)
    if v1.shape != v2.shape:
        raise ValueError("value arrays must share profile ordering and length")
    le = lambda_const.value * eps

    def near_min(v, a):
        return v <= v.min() + a + TOL

    def near_max(v, a):
        return v >= v.max() - a - TOL

    return ContainmentReport(
        min_side_inner=bool(np.all(near_min(v2, le)[near_min(v1, 0.0)])),
        min_side_outer=bool(np.all(near_min(v1, 2 * le)[near_min(v2, le)])),
        max_side_inner=bool(np.all(near_max(v2, le)[near_max(v1, 0.0)])),
        max_side_outer=bool(np.all(near_max(v1, 2 * le)[near_max(v2, le)])),
    )


def shifted_game(game: NormalFormGame, delta: float) -> NormalFormGame:
    """Game with every utility shifted by delta (range widened to stay legal)."""
    return NormalFormGame(
        game.strategy_counts, game.utilities + delta, game.c + 2 * abs(delta)
    )


def extreme_eq_bounds(
    approx_game: NormalFormGame, eps: float, spec: WelfareSpec
) -> IntervalBound:
    """Interval containing [MD, MC] of any game within eps of approx_game."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    nash = eps_nash_set(approx_game, 2 * eps)
    if len(nash) == 0:
        return IntervalBound(-math.inf, math.inf, flags=("nash_set_empty",))
    ranks = [approx_game.profile_rank(p) for p in nash.profiles]
    w_minus = welfare_table(shifted_game(approx_game, -eps), spec)[ranks]
    w_plus = welfare_table(shifted_game(approx_game, +eps), spec)[ranks]
    return IntervalBound(float(w_minus.min()), float(w_plus.max()))


def extreme_eq_bounds_refined(
    approx_game: NormalFormGame, eps: float, gamma: float, spec: WelfareSpec
) -> RefinedExtremeBounds:
    """Refined bounds under gamma-stability: MD <= md_upper, MC >= mc_lower."""
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    nash = eps_nash_set(approx_game, 0.0)
    if len(nash) == 0:
        return RefinedExtremeBounds(math.inf, -math.inf, flags=("nash_set_empty",))
    ranks = [approx_game.profile_rank(p) for p in nash.profiles]
    w_plus = welfare_table(shifted_game(approx_game, +eps), spec)[ranks]
    w_minus = welfare_table(shifted_game(approx_game, -eps), spec)[ranks]
    return RefinedExtremeBounds(
        md_upper=float(w_plus.min()) + 2 * gamma * eps,
        mc_lower=float(w_minus.max()) - 2 * gamma * eps,
    )


def _ratio(num: float, den: float, side: str, flags: list[str]) -> float:
    if -TOL < den <= TOL:
        flags.append(f"denominator_zero_{side}")
        return math.inf if side == "upper" else -math.inf
    if num <= 0 or den <= 0:
        flags.append(f"nonpositive_{side}")
    return num / den


def ar_sr_bounds(
    approx_game: NormalFormGame,
    eps: float,
    spec: WelfareSpec,
    gamma: float | None = None,
) -> tuple[IntervalBound, IntervalBound]:
    """(anarchy ratio bound, stability ratio bound); both live in the same
    interval unless the gamma-refined corollary tightens one side."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    nash = eps_nash_set(approx_game, 2 * eps)
    if len(nash) == 0:
        flagged = IntervalBound(-math.inf, math.inf, flags=("nash_set_empty",))
        return flagged, flagged
    ranks = [approx_game.profile_rank(p) for p in nash.profiles]
    w_all_minus = welfare_table(shifted_game(approx_game, -eps), spec)
    w_all_plus = welfare_table(shifted_game(approx_game, +eps), spec)

    flags: list[str] = []
    lower = max(1.0, _ratio(float(w_all_minus.max()), float(w_all_plus[ranks].max()), "lower", flags))
    upper = _ratio(float(w_all_plus.max()), float(w_all_minus[ranks].min()), "upper", flags)

    ar_lower, sr_upper = lower, upper
    if gamma is not None:
        nash0 = eps_nash_set(approx_game, 0.0)
        if len(nash0) == 0:
            flags.append("nash_set_empty_refined")
        else:
            r0 = [approx_game.profile_rank(p) for p in nash0.profiles]
            ar_lower = max(
                ar_lower,
                _ratio(
                    float(w_all_minus.max()),
                    float(w_all_plus[r0].min()) + 2 * gamma * eps,
                    "refined_lower",
                    flags,
                ),
            )
            sr_upper = min(
                sr_upper,
                _ratio(
                    float(w_all_plus.max()),
                    float(w_all_minus[r0].max()) - 2 * gamma * eps,
                    "refined_upper",
                    flags,
                ),
            )
    fl = tuple(flags)
    ar = IntervalBound(ar_lower, upper, flags=fl)
    sr = IntervalBound(lower, sr_upper, flags=fl)
    return ar, sr


@dataclass(frozen=True)
class PPOAEstimators:
    lower: float
    upper: float
    mean_style: float
    flags: tuple[str, ...] = ()


def ppoa_estimators(
    approx_game: NormalFormGame, eps: float, x: float
) -> PPOAEstimators:
    """Pure-price-of-anarchy estimators (utilitarian welfare only)."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    spec = WelfareSpec("utilitarian_sum")
    w = welfare_table(approx_game, spec)
    p = approx_game.num_players
    nash2e = eps_nash_set(approx_game, 2 * eps)
    flags: list[str] = []
    if len(nash2e) == 0:
        return PPOAEstimators(math.nan, math.nan, math.nan, flags=("nash_set_empty",))
    r2 = [approx_game.profile_rank(s) for s in nash2e.profiles]
    w_max = float(w.max())
    lower = _ratio(w_max - p * eps, float(w[r2].max()) + p * eps, "lower", flags)
    upper = _ratio(w_max + p * eps, float(w[r2].min()) - p * eps, "upper", flags)
    nash_x = eps_nash_set(approx_game, x)
    if len(nash_x) == 0:
        flags.append("nash_x_empty")
        mean_style = math.nan
    else:
        rx = [approx_game.profile_rank(s) for s in nash_x.profiles]
        mean_style = _ratio(w_max, float(w[rx].min()), "mean", flags)
    return PPOAEstimators(lower, upper, mean_style, flags=tuple(flags))


@dataclass(frozen=True)
class CounterexampleReport:
    linf: float
    md_gap: float
    mc_gap: float


def counterexample_gap_demo(gamma: float, c_param: float) -> CounterexampleReport:
    """Build the inapproximability pair (Gamma(-g), Gamma(g)) and report the
    sup-norm distance against the MD/MC welfare gaps."""
    from egta.nfg import linf_distance
    from egta.simworld import gen_counterexample

    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    if c_param < 0:
        raise ValueError("c_param must be nonnegative")
    g_neg = gen_counterexample(-gamma, c_param)
    g_pos = gen_counterexample(gamma, c_param)
    spec = WelfareSpec("utilitarian_sum")
    md_gap = abs(
        md_lambda(g_neg, spec, math.inf)[0] - md_lambda(g_pos, spec, math.inf)[0]
    )
    mc_gap = abs(
        mc_lambda(g_neg, spec, math.inf)[0] - mc_lambda(g_pos, spec, math.inf)[0]
    )
    return CounterexampleReport(linf_distance(g_neg, g_pos), md_gap, mc_gap)
