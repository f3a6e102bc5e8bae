"""Seeded desk-scale experiments behind the `exp` CLI subcommand.

Each experiment returns deterministic CSV rows; the schema (column list) is
shared with the figure scripts through SCHEMAS and a schema-version column.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from egta import concentration, sampling, simworld
from egta.nfg import TOL, NormalFormGame, regret_table
from egta.properties import WelfareSpec, anarchy_gap, welfare_table

SCHEMAS: dict[str, tuple[str, ...]] = {
    "eps-nash": ("schema_version", "eps", "game_id", "proportion"),
    "welfare-error": ("schema_version", "rho", "mean_sup_error"),
    "variance-pruning": (
        "schema_version",
        "regime",
        "samples",
        "active_proportion",
        "lower_bound",
        "upper_bound",
    ),
    "psp-vs-gs": (
        "schema_version",
        "algorithm",
        "target_or_m",
        "eps_achieved",
        "data",
        "queries",
    ),
    "anarchy-gap": (
        "schema_version",
        "Lambda",
        "noise_model",
        "draw_id",
        "ag_value",
        "theory_lower",
        "theory_upper",
    ),
    "coverage": ("schema_version", "trial_block", "success_rate", "delta"),
}

SCHEMA_VERSION = {name: f"{name}/1" for name in SCHEMAS}


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


DEFAULTS: dict[str, dict[str, Any]] = {
    "eps-nash": {
        "generator": "rz",
        "games": 20,
        "k": 18,
        "u0": 2.0,
        "players": 3,
        "facilities": 6,
        "k_max": 7,
        "alpha": 0.6,
        "eps_points": 21,
    },
    "welfare-error": {
        "players": 3,
        "facilities": 3,
        "k_max": 2,
        "alpha": 0.5,
        "eps": 0.02,
        "perturbations": 100,
        "rho_grid": [-10.0, -5.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0],
    },
    "variance-pruning": {
        "k": 80,
        "u0": 2.0,
        "d": 2.0,
        "regimes": [[0.5, 3.0], [1.5, 3.0], [5.0, 0.5]],
        "eps": 0.5,
        "delta": 0.1,
        "beta": 2.0,
    },
    "psp-vs-gs": {
        "players": 3,
        "facilities": 3,
        "k_max": 7,
        "alpha": 0.6,
        "u0": 2.0,
        "d": 20.0,
        "scale_alpha": 1.5,
        "scale_beta": 3.0,
        "eps": 1.0,
        "delta": 0.1,
        "beta": 2.0,
        "gs_points": 8,
    },
    "anarchy-gap": {
        "players": 3,
        "facilities": 3,
        "k_max": 2,
        "alpha": 0.5,
        "u0": 2.0,
        "eps": 0.05,
        "draws": 50,
        "lambdas": [0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0],
        "models": ["parabolic", "arcsine"],
    },
    "coverage": {
        "eb_blocks": 5,
        "eb_trials": 400,
        "eb_m": 200,
        "eb_delta": 0.05,
        "psp_blocks": 5,
        "psp_runs": 10,
        "psp_eps": 0.5,
        "psp_delta": 0.1,
    },
}


def resolve_config(name: str, overrides: dict[str, Any] | None) -> dict[str, Any]:
    if name not in DEFAULTS:
        raise KeyError(name)
    config = dict(DEFAULTS[name])
    for key, value in (overrides or {}).items():
        if key not in config:
            raise ConfigError(f"{name}.{key}", "unknown configuration key")
        if not isinstance(value, type(config[key])) and not (
            isinstance(config[key], float) and isinstance(value, (int, float))
        ):
            raise ConfigError(
                f"{name}.{key}",
                f"expected {type(config[key]).__name__}, got {type(value).__name__}",
            )
        config[key] = value
    return config


def _rc_game(cfg: dict[str, Any], seed: int, u0: float = 2.0) -> NormalFormGame:
    return simworld.gen_random_congestion(
        cfg["players"], cfg["facilities"], cfg["k_max"], cfg["alpha"], u0, seed
    )


def _positive_rescale(game: NormalFormGame, lo: float = 0.1, hi: float = 1.1) -> NormalFormGame:
    u = game.utilities
    span = u.max() - u.min()
    if span < 1e-15:
        scaled = np.full_like(u, (lo + hi) / 2)
    else:
        scaled = lo + (u - u.min()) * (hi - lo) / span
    return NormalFormGame(game.strategy_counts, scaled, 2 * hi + 0.5)


def run_experiment(name: str, config: dict[str, Any] | None, seed: int) -> list[dict[str, Any]]:
    cfg = resolve_config(name, config)
    fn = {
        "eps-nash": _exp_eps_nash,
        "welfare-error": _exp_welfare_error,
        "variance-pruning": _exp_variance_pruning,
        "psp-vs-gs": _exp_psp_vs_gs,
        "anarchy-gap": _exp_anarchy_gap,
        "coverage": _exp_coverage,
    }[name]
    version = SCHEMA_VERSION[name]
    rows = fn(cfg, seed)
    for row in rows:
        row["schema_version"] = version
    return rows


def _exp_eps_nash(cfg, seed):
    rows = []
    for game_id in range(cfg["games"]):
        if cfg["generator"] == "rz":
            game = simworld.gen_random_zero_sum(cfg["k"], cfg["u0"], seed + game_id)
        elif cfg["generator"] == "rc":
            game = _rc_game(cfg, seed + game_id, cfg["u0"])
        else:
            raise ConfigError("eps-nash.generator", "must be 'rz' or 'rc'")
        table = regret_table(game)
        for eps in np.linspace(0.0, game.c, cfg["eps_points"]):
            rows.append(
                {
                    "eps": float(eps),
                    "game_id": game_id,
                    "proportion": float(np.mean(table <= eps + TOL)),
                }
            )
    return rows


def _exp_welfare_error(cfg, seed):
    base = _positive_rescale(_rc_game(cfg, seed))
    weights = tuple(1.0 / base.num_players for _ in range(base.num_players))
    rows = []
    tables = {}
    for rho in cfg["rho_grid"]:
        spec = WelfareSpec("power_mean", rho=float(rho), weights=weights)
        tables[rho] = welfare_table(base, spec)
    errors = {rho: [] for rho in cfg["rho_grid"]}
    for j in range(cfg["perturbations"]):
        pert = simworld.perturb_uniform(base, cfg["eps"], seed + 1000 + j)
        for rho in cfg["rho_grid"]:
            spec = WelfareSpec("power_mean", rho=float(rho), weights=weights)
            errors[rho].append(float(np.abs(welfare_table(pert, spec) - tables[rho]).max()))
    for rho in cfg["rho_grid"]:
        rows.append({"rho": float(rho), "mean_sup_error": float(np.mean(errors[rho]))})
    return rows


def _psp_run(base, scale_alpha, scale_beta, d, eps, delta, beta, seed):
    noise = simworld.NoiseSpec(d, scale_alpha, scale_beta).realized(
        base.num_players, base.num_profiles, seed
    )
    oracle = simworld.additive_noise_oracle(base, noise, seed)
    config = sampling.EstimationConfig(
        eps=eps, delta=delta, c=oracle.c, beta=beta, master_seed=seed
    )
    return oracle, config, sampling.psp(oracle, None, config)


def _exp_variance_pruning(cfg, seed):
    rows = []
    base = simworld.gen_random_zero_sum(cfg["k"], cfg["u0"], seed)
    for a, b in cfg["regimes"]:
        oracle, config, report = _psp_run(
            base, a, b, cfg["d"], cfg["eps"], cfg["delta"], cfg["beta"], seed
        )
        n_prof = base.num_profiles
        game_size = base.num_players * n_prof
        schedule = sampling.build_schedule(
            cfg["eps"], cfg["delta"], oracle.c, cfg["beta"], game_size
        )
        delta_eff = math.exp(-schedule.log_term)
        v_prof = oracle.true_variances.max(axis=0)
        psp_bounds = np.array(
            [
                concentration.psp_profile_query_bound(
                    cfg["eps"], delta_eff, oracle.c, float(v), cfg["beta"],
                    schedule.T_len, game_size,
                )
                for v in v_prof
            ]
        )
        bennett_bounds = np.array(
            [
                concentration.bennett_sample_complexity(cfg["eps"], delta_eff, oracle.c, float(v))
                for v in v_prof
            ]
        )
        regime = f"beta({a},{b})"
        for t, m_t, _, active_profiles, _, _ in report.iteration_log:
            rows.append(
                {
                    "regime": regime,
                    "samples": int(m_t),
                    "active_proportion": active_profiles / n_prof,
                    "lower_bound": float(np.mean(bennett_bounds > m_t)),
                    "upper_bound": float(np.mean(psp_bounds > m_t)),
                }
            )
    return rows


def _exp_psp_vs_gs(cfg, seed):
    rows = []
    base = _rc_game(cfg, seed, cfg["u0"])
    noise = simworld.NoiseSpec(cfg["d"], cfg["scale_alpha"], cfg["scale_beta"]).realized(
        base.num_players, base.num_profiles, seed
    )
    oracle = simworld.additive_noise_oracle(base, noise, seed)
    config = sampling.EstimationConfig(
        eps=cfg["eps"], delta=cfg["delta"], c=oracle.c, beta=cfg["beta"], master_seed=seed
    )
    report = sampling.psp(oracle, None, config)
    rows.append(
        {
            "algorithm": "psp",
            "target_or_m": cfg["eps"],
            "eps_achieved": report.max_radius,
            "data": report.data_complexity,
            "queries": report.query_complexity,
        }
    )
    game_size = base.num_players * base.num_profiles
    schedule = sampling.build_schedule(
        cfg["eps"], cfg["delta"], oracle.c, cfg["beta"], game_size
    )
    delta_eff = math.exp(-schedule.log_term)
    bound_queries = sum(
        concentration.psp_profile_query_bound(
            cfg["eps"], delta_eff, oracle.c, float(v), cfg["beta"],
            schedule.T_len, game_size,
        )
        for v in oracle.true_variances.max(axis=0)
    )
    rows.append(
        {
            "algorithm": "psp_bound",
            "target_or_m": cfg["eps"],
            "eps_achieved": cfg["eps"],
            "data": int(math.ceil(schedule.omega)),
            "queries": int(math.ceil(bound_queries)),
        }
    )
    m_grid = np.unique(
        np.geomspace(
            max(2, math.ceil(schedule.alpha)),
            math.ceil(schedule.omega),
            cfg["gs_points"],
        ).astype(int)
    )
    kind_names = {
        "hoeffding_bonferroni": "gs_h",
        "uniform_empirical_bennett": "gs_eb_uniform",
        "per_index_empirical_bennett": "gs_eb_per_index",
    }
    for kind, label in kind_names.items():
        for m in m_grid:
            gs_config = sampling.EstimationConfig(
                eps=cfg["eps"], delta=cfg["delta"], c=oracle.c, beta=cfg["beta"],
                bound_kind=kind, master_seed=seed,
            )
            gs_report = sampling.gs(oracle, int(m), gs_config)
            rows.append(
                {
                    "algorithm": label,
                    "target_or_m": int(m),
                    "eps_achieved": gs_report.max_radius,
                    "data": gs_report.data_complexity,
                    "queries": gs_report.query_complexity,
                }
            )
    return rows


def _exp_anarchy_gap(cfg, seed):
    base = _rc_game(cfg, seed, cfg["u0"])
    spec = WelfareSpec("utilitarian_sum")
    lam_w = base.num_players
    rows = []
    for model in cfg["models"]:
        for draw in range(cfg["draws"]):
            pert = simworld.perturb_uniform(
                base, cfg["eps"], seed + 7919 * (1 + cfg["models"].index(model)) + draw, model
            )
            for lam in cfg["lambdas"]:
                ag_base = anarchy_gap(base, spec, float(lam))
                slack = 2.0 * (lam_w + float(lam)) * cfg["eps"]
                rows.append(
                    {
                        "Lambda": float(lam),
                        "noise_model": model,
                        "draw_id": draw,
                        "ag_value": anarchy_gap(pert, spec, float(lam)),
                        "theory_lower": ag_base - slack,
                        "theory_upper": ag_base + slack,
                    }
                )
    return rows


def _exp_coverage(cfg, seed):
    rows = []
    rng = np.random.default_rng(seed)
    c = 1.0
    m = cfg["eb_m"]
    delta = cfg["eb_delta"]
    for block in range(cfg["eb_blocks"]):
        draws = rng.choice([-c / 2, c / 2], size=(cfg["eb_trials"], m))
        means = draws.mean(axis=1)
        vhat = np.minimum(draws.var(axis=1, ddof=1), c**2 / 4)
        radii = concentration.empirical_bennett_radii(m, vhat, delta / 3.0, c)
        ok = np.abs(means) <= np.asarray(radii.effective_radius)
        rows.append(
            {
                "trial_block": f"eb_mean/{block}",
                "success_rate": float(ok.mean()),
                "delta": delta,
            }
        )
    for block in range(cfg["psp_blocks"]):
        successes = 0
        for run in range(cfg["psp_runs"]):
            run_seed = seed + 104729 * block + run
            base = simworld.gen_random_zero_sum(5, 2.0, run_seed)
            _, _, report = _psp_run(
                base, 1.5, 3.0, 1.0, cfg["psp_eps"], cfg["psp_delta"], 2.0, run_seed
            )
            if sampling.verify_uniform(report, base, cfg["psp_eps"]):
                successes += 1
        rows.append(
            {
                "trial_block": f"psp/{block}",
                "success_rate": successes / cfg["psp_runs"],
                "delta": cfg["psp_delta"],
            }
        )
    return rows
