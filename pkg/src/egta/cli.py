"""Command-line interface: game generation, property reports, estimation runs,
experiments, and verification.

Exit codes: 0 ok, 1 verification failed, 2 usage error, 3 configuration error,
4 runtime error.
"""

from __future__ import annotations

import csv
import json
import math
import os
import sys
from io import StringIO

import click
import numpy as np

from egta import experiments, sampling, simworld
from egta.experiments import SCHEMAS, ConfigError
from egta.gamefile import (
    GameFile,
    game_to_dict,
    load_game,
    load_report,
    report_to_dict,
    save_game,
    save_report,
)
from egta.nfg import eps_nash_set, regret_table
from egta.properties import (
    WelfareSpec,
    anarchy_gap,
    ar_sr_bounds,
    extreme_eq_bounds,
    maximin,
    ppoa_estimators,
    welfare_table,
)

PSP_LOG_COLUMNS = (
    "schema_version",
    "t",
    "m_t",
    "active_indices",
    "active_profiles",
    "cumulative_data",
    "cumulative_queries",
)


def _write_csv(columns, rows, out_path):
    buf = StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    if out_path:
        with open(out_path, "w") as f:
            f.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _emit_json(doc, out_path):
    text = json.dumps(doc, indent=1) + "\n"
    if out_path:
        with open(out_path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _parse_float_list(text):
    return [float(x) for x in text.split(",") if x.strip()]


@click.group()
@click.option("--seed", type=int, default=0, show_default=True, help="Master seed.")
@click.option("--threads", type=int, default=None, help="Worker hint (EGTA_THREADS fallback).")
@click.option("--out", type=click.Path(), default=None, help="Output path (stdout if omitted).")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default=None,
    help="Output format where a command supports both.",
)
@click.pass_context
def cli(ctx, seed, threads, out, fmt):
    if threads is None:
        threads = int(os.environ.get("EGTA_THREADS", "1"))
    ctx.obj = {"seed": seed, "threads": threads, "out": out, "format": fmt}


@cli.command()
@click.argument("generator", type=click.Choice(["rz", "rc", "counterexample", "fixture"]))
@click.option("--k", type=int, default=18, show_default=True)
@click.option("--u0", type=float, default=2.0, show_default=True)
@click.option("--players", type=int, default=3, show_default=True)
@click.option("--facilities", type=int, default=6, show_default=True)
@click.option("--k-max", type=int, default=7, show_default=True)
@click.option("--alpha", type=float, default=0.6, show_default=True)
@click.option("--gamma", type=float, default=0.1, show_default=True)
@click.option("--c-param", "--c", "c_param", type=float, default=1.0, show_default=True)
@click.option("--name", type=click.Choice(["gamma1", "gamma2"]), default="gamma1")
@click.option("--noise-d", type=float, default=None, help="Attach scaled-Bernoulli noise.")
@click.option("--noise-alpha", type=float, default=1.5, show_default=True)
@click.option("--noise-beta", type=float, default=3.0, show_default=True)
@click.pass_obj
def gen(obj, generator, k, u0, players, facilities, k_max, alpha, gamma, c_param,
        name, noise_d, noise_alpha, noise_beta):
    """Generate a game file."""
    seed = obj["seed"]
    if generator == "rz":
        game = simworld.gen_random_zero_sum(k, u0, seed)
        params = {"k": k, "u0": u0}
    elif generator == "rc":
        game = simworld.gen_random_congestion(players, facilities, k_max, alpha, u0, seed)
        params = {
            "players": players, "facilities": facilities, "k_max": k_max,
            "alpha": alpha, "u0": u0,
        }
    elif generator == "counterexample":
        game = simworld.gen_counterexample(gamma, c_param)
        params = {"gamma": gamma, "c": c_param}
    else:
        game = simworld.fixture_gamma1() if name == "gamma1" else simworld.fixture_gamma2()
        params = {"name": name}
    noise = None
    if noise_d is not None:
        noise = simworld.NoiseSpec(noise_d, noise_alpha, noise_beta).realized(
            game.num_players, game.num_profiles, seed
        )
    gf = GameFile(game, noise, {"generator": generator, "params": params, "seed": seed})
    if obj["out"]:
        save_game(gf, obj["out"])
    else:
        _emit_json(game_to_dict(gf), None)


@cli.command()
@click.argument("game_file", type=click.Path(exists=True))
@click.option("--eps-list", default="0", show_default=True, help="Comma-separated regrets.")
@click.option("--rho-list", default="", help="Power-mean exponents (uniform weights).")
@click.option("--lambda-list", default="0,1", show_default=True)
@click.option("--approx-of", is_flag=True, help="Treat the game as an eps-approximation.")
@click.option("--eps", type=float, default=None, help="Approximation radius for bounds.")
@click.pass_obj
def props(obj, game_file, eps_list, rho_list, lambda_list, approx_of, eps):
    """Report regrets, equilibria, welfare, and (optionally) interval bounds."""
    gf = load_game(game_file)
    game = gf.game
    util = WelfareSpec("utilitarian_sum")
    doc = {
        "regret": [float(r) for r in regret_table(game)],
        "eps_nash": {},
        "welfare": {},
        "anarchy_gap": {},
        "maximin": {},
    }
    for e in _parse_float_list(eps_list):
        doc["eps_nash"][str(e)] = [list(p) for p in eps_nash_set(game, e).profiles]
    weights = tuple(1.0 / game.num_players for _ in range(game.num_players))
    doc["welfare"]["utilitarian_sum"] = [float(w) for w in welfare_table(game, util)]
    for rho in _parse_float_list(rho_list):
        spec = WelfareSpec("power_mean", rho=rho, weights=weights)
        doc["welfare"][f"power_mean:{rho}"] = [float(w) for w in welfare_table(game, spec)]
    for lam in _parse_float_list(lambda_list):
        doc["anarchy_gap"][str(lam)] = anarchy_gap(game, util, lam)
    for p in range(game.num_players):
        value, strategy = maximin(game, p)
        doc["maximin"][str(p)] = {"value": value, "strategy": strategy}
    if approx_of and eps is not None:
        interval = extreme_eq_bounds(game, eps, util)
        ar, sr = ar_sr_bounds(game, eps, util)
        ppoa = ppoa_estimators(game, eps, 0.0)
        doc["bounds"] = {
            "extreme_eq": {"lower": interval.lower, "upper": interval.upper,
                           "flags": list(interval.flags)},
            "ar": {"lower": ar.lower, "upper": ar.upper, "flags": list(ar.flags)},
            "sr": {"lower": sr.lower, "upper": sr.upper, "flags": list(sr.flags)},
            "ppoa": {"lower": ppoa.lower, "upper": ppoa.upper,
                     "mean_style": ppoa.mean_style, "flags": list(ppoa.flags)},
        }
    if obj["format"] == "csv":
        rows = []
        for section, payload in doc.items():
            rows.append({"schema_version": "props/1", "section": section,
                         "payload": json.dumps(payload)})
        _write_csv(("schema_version", "section", "payload"), rows, obj["out"])
    else:
        _emit_json(doc, obj["out"])


def _oracle_from_file(gf: GameFile):
    if gf.noise is not None:
        return simworld.additive_noise_oracle(gf.game, gf.noise)
    return simworld.deterministic_oracle(gf.game)


def _write_run_outputs(report, obj):
    doc = report_to_dict(report)
    if obj["out"]:
        save_report(report, obj["out"])
        rows = [
            {
                "schema_version": "psp-log/1",
                "t": t, "m_t": m_t, "active_indices": ai, "active_profiles": ap,
                "cumulative_data": cd, "cumulative_queries": cq,
            }
            for t, m_t, ai, ap, cd, cq in report.iteration_log
        ]
        _write_csv(PSP_LOG_COLUMNS, rows, obj["out"] + ".log.csv")
    else:
        _emit_json(doc, None)


@cli.command()
@click.argument("game_file", type=click.Path(exists=True))
@click.option("--m", type=int, required=True, help="Shared conditions to draw.")
@click.option("--delta", type=float, default=0.05, show_default=True)
@click.option("--eps", type=float, default=0.1, show_default=True)
@click.option(
    "--bound-kind",
    type=click.Choice(list(sampling.BOUND_KINDS)),
    default="per_index_empirical_bennett",
    show_default=True,
)
@click.pass_obj
def gs(obj, game_file, m, delta, eps, bound_kind):
    """Global sampling with a fixed sample size."""
    gf = load_game(game_file)
    oracle = _oracle_from_file(gf)
    config = sampling.EstimationConfig(
        eps=eps, delta=delta, c=oracle.c, bound_kind=bound_kind,
        master_seed=obj["seed"], thread_count=obj["threads"],
    )
    _write_run_outputs(sampling.gs(oracle, m, config), obj)


@cli.command()
@click.argument("game_file", type=click.Path(exists=True))
@click.option("--eps", type=float, required=True)
@click.option("--delta", type=float, default=0.05, show_default=True)
@click.option("--beta", type=float, default=2.0, show_default=True)
@click.pass_obj
def psp(obj, game_file, eps, delta, beta):
    """Progressive sampling with pruning."""
    gf = load_game(game_file)
    oracle = _oracle_from_file(gf)
    config = sampling.EstimationConfig(
        eps=eps, delta=delta, c=oracle.c, beta=beta,
        master_seed=obj["seed"], thread_count=obj["threads"],
    )
    _write_run_outputs(sampling.psp(oracle, None, config), obj)


@cli.command()
@click.argument("name", type=click.Choice(sorted(SCHEMAS)))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.pass_obj
def exp(obj, name, config_path):
    """Run a named experiment and emit its CSV."""
    overrides = None
    if config_path:
        with open(config_path) as f:
            overrides = json.load(f)
    rows = experiments.run_experiment(name, overrides, obj["seed"])
    _write_csv(SCHEMAS[name], rows, obj["out"])


@cli.command()
@click.argument("game_file", type=click.Path(exists=True))
@click.argument("report_file", type=click.Path(exists=True))
@click.option("--eps", type=float, required=True)
def verify(game_file, report_file, eps):
    """Exit 0 iff every estimate is within eps of the game file's utilities."""
    gf = load_game(game_file)
    report = load_report(report_file)
    ok = sampling.verify_uniform(report, gf.game, eps)
    click.echo("ok" if ok else "failed")
    sys.exit(0 if ok else 1)


def main():
    try:
        cli(standalone_mode=False)
    except click.exceptions.Exit as e:
        sys.exit(e.exit_code)
    except click.UsageError as e:
        e.show()
        sys.exit(2)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except click.Abort:
        sys.exit(2)
    except ConfigError as e:
        click.echo(f"config error: {e}", err=True)
        sys.exit(3)
    except (json.JSONDecodeError, KeyError) as e:
        click.echo(f"config error: {e}", err=True)
        sys.exit(3)
    except Exception as e:  # noqa: BLE001 - CLI boundary
        click.echo(f"runtime error: {e}", err=True)
        sys.exit(4)


if __name__ == "__main__":
    main()
