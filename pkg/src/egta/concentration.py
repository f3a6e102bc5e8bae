"""Tail bounds and sample-complexity formulas.

Hoeffding radii/complexities, the exact sub-gamma Bennett complexity via
h(x) = (1+x)ln(1+x) - x, empirical-variance-sensitive Bennett radii, the
self-bounding variance upper tail, and the per-profile query bound for
progressive sampling.

Throughout, c is the utility range width (values in [-c/2, c/2]) and log
terms are passed pre-corrected: delta_eff already includes any union-bound
division (|Gamma|, schedule length, ...), so L = ln(1/delta_eff).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TailParams:
    m: int
    delta: float
    c: float
    game_size: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0,1)")
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.game_size < 1:
            raise ValueError("game_size must be positive")


@dataclass(frozen=True)
class BennettRadii:
    eps_vhat: np.ndarray | float
    eps_mu: np.ndarray | float
    v_upper: np.ndarray | float
    hoeffding_radius: np.ndarray | float
    effective_radius: np.ndarray | float


@dataclass(frozen=True)
class VarianceProfile:
    """Per-index variances, shape (num_players, num_profiles)."""

    variances: np.ndarray
    c: float

    def __post_init__(self):
        v = np.asarray(self.variances, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("variances must be (players, profiles)")
        if np.any(v < 0) or np.any(v > self.c**2 / 4 + 1e-12):
            raise ValueError("variances must lie in [0, c^2/4]")
        object.__setattr__(self, "variances", v)

    @property
    def vmax(self) -> float:
        return float(self.variances.max())

    @property
    def v1inf(self) -> float:
        """Sum over profiles of the per-profile max over players."""
        return float(self.variances.max(axis=0).sum())


def bennett_h(x):
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise ValueError("h(x) is defined for x >= 0")
    out = (1 + x) * np.log1p(x) - x
    return float(out) if out.ndim == 0 else out


def hoeffding_radius(m: int, delta: float, c: float):
    if np.any(np.asarray(m) < 1):
        raise ValueError("m must be at least 1")
    out = c * np.sqrt(np.log(2.0 / delta) / (2.0 * np.asarray(m, dtype=np.float64)))
    return float(out) if np.ndim(out) == 0 else out


def hoeffding_data_complexity(eps: float, delta: float, c: float, game_size: int) -> float:
    if eps <= 0:
        raise ValueError("eps must be positive")
    return c**2 * math.log(2.0 * game_size / delta) / (2.0 * eps**2)


def hoeffding_query_complexity(
    eps: float, delta: float, c: float, game_size: int, profile_count: int
) -> float:
    return profile_count + profile_count * hoeffding_data_complexity(
        eps, delta, c, game_size
    )


def bennett_sample_complexity(eps: float, delta: float, c: float, v: float) -> float:
    """Exact sub-gamma sample complexity c^2 ln(2/d) / (v h(c eps / v))."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if v < 0:
        raise ValueError("variance must be nonnegative")
    if v == 0:
        return 1.0  # deterministic observable: one look suffices
    return c**2 * math.log(2.0 / delta) / (v * bennett_h(c * eps / v))


def bennett_sample_complexity_loose(eps: float, delta: float, c: float, v: float) -> float:
    return 2.0 * math.log(2.0 / delta) * (c / (3.0 * eps) + v / eps**2)


def bennett_data_query_complexity(
    eps: float, delta: float, c: float, profile_count: int, variance_profile: VarianceProfile
) -> tuple[float, float]:
    game_size = variance_profile.variances.size
    data = bennett_sample_complexity(eps, delta / game_size, c, variance_profile.vmax)
    query = profile_count + bennett_sample_complexity(
        eps, delta / game_size, c * profile_count, variance_profile.v1inf
    )
    return data, query


def empirical_bennett_radii(m: int, vhat, delta_eff: float, c: float) -> BennettRadii:
    """Empirical-variance-sensitive radii at L = ln(1/delta_eff).

    eps_vhat corrects the variance estimate upward; eps_mu is the mean radius
    using the corrected variance. The effective radius caps eps_mu with the
    plain Hoeffding radius at the same log term.
    """
    if m < 2:
        raise ValueError("variance-based radii need m >= 2")
    if not 0 < delta_eff < 1:
        raise ValueError("delta_eff must lie in (0,1)")
    vhat = np.asarray(vhat, dtype=np.float64)
    if np.any(vhat < 0) or np.any(vhat > c**2 / 4 + 1e-9):
        raise ValueError("vhat must lie in [0, c^2/4]")
    L = math.log(1.0 / delta_eff)
    scale = c**2 * L / (m - 1)
    eps_vhat = 2 * c**2 * L / (3 * m) + np.sqrt(
        (1.0 / 3.0 + 1.0 / (2.0 * L)) * scale**2 + 2 * c**2 * vhat * L / m
    )
    v_upper = vhat + eps_vhat
    eps_mu = c * L / (3 * m) + np.sqrt(2 * v_upper * L / m)
    hoeff = c * math.sqrt(L / (2 * m))
    effective = np.minimum(eps_mu, hoeff)
    if vhat.ndim == 0:
        return BennettRadii(
            float(eps_vhat), float(eps_mu), float(v_upper), hoeff, float(effective)
        )
    return BennettRadii(eps_vhat, eps_mu, v_upper, np.full_like(eps_mu, hoeff), effective)


def empirical_bennett_sufficient_m(eps: float, delta: float, c: float, v: float) -> float:
    if eps <= 0:
        raise ValueError("eps must be positive")
    L3 = math.log(3.0 / delta)
    return 1.0 + 5.0 * c * L3 / eps + 2.0 * v * L3 / eps**2


def variance_upper_tail(m: int, v: float, delta: float, c: float) -> float:
    """Upper bound on the realized empirical variance given true variance v."""
    if m < 2:
        raise ValueError("m >= 2 required")
    L3 = math.log(3.0 / delta)
    return (
        v
        + (2 * m + 1) / (6 * (m - 1)) * c**2 * L3 / m
        + math.sqrt(2 * c**2 * v * L3 / (m - 1))
    )


def psp_kappa(delta_eff: float) -> float:
    L = math.log(1.0 / delta_eff)
    return 4.0 / 3.0 + math.sqrt(1.0 + 1.0 / (2.0 * L))


def psp_profile_query_bound(
    eps: float,
    delta_eff: float,
    c: float,
    v: float,
    beta: float,
    T_len: int = 1,
    game_size: int = 1,
) -> float:
    """Per-profile query bound for progressive sampling with pruning.

    delta_eff is pre-corrected (delta / (3 T |Gamma|) in the headline result);
    T_len and game_size are accepted for validation only.
    """
    if eps <= 0 or c <= 0 or beta <= 1:
        raise ValueError("need eps > 0, c > 0, beta > 1")
    if v < 0:
        raise ValueError("variance must be nonnegative")
    if T_len < 1 or game_size < 1:
        raise ValueError("T_len and game_size must be positive")
    L = math.log(1.0 / delta_eff)
    kappa = psp_kappa(delta_eff)
    return 1.0 + beta * L * (
        kappa * c / eps
        + v / eps**2
        + math.sqrt(2 * kappa * c * v / eps**3 + (v / eps**2) ** 2)
    )


def psp_profile_query_bound_loose(
    eps: float, delta_eff: float, c: float, v: float, beta: float
) -> float:
    L = math.log(1.0 / delta_eff)
    return 1.0 + 2.0 * beta * L * (5.0 * c / (2.0 * eps) + v / eps**2)


def mean_estimation_lower_bound(
    eps: float, delta: float, vnorm: float, game_size: int
) -> float:
    if eps <= 0:
        raise ValueError("eps must be positive")
    return vnorm / eps**2 * math.log(game_size / delta)
