import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from egta import experiments, sampling
from egta.experiments import SCHEMAS, ConfigError, resolve_config, run_experiment
from egta.gamefile import (
    GameFile,
    game_from_dict,
    game_to_dict,
    load_game,
    load_report,
    save_game,
    save_report,
)
from egta.simworld import NoiseSpec, deterministic_oracle, gen_random_zero_sum

from conftest import random_game


def _run(*args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "egta.cli", *args],
        capture_output=True,
        text=True,
        **kw,
    )


# --------------------------------------------------------------- game files


def test_game_round_trip_bit_exact(rng):
    game = random_game(rng, (2, 3))
    noise = NoiseSpec(1.0, 1.5, 3.0).realized(2, 6, 0)
    gf = GameFile(game, noise, {"note": "x"})
    back = game_from_dict(json.loads(json.dumps(game_to_dict(gf))))
    assert back.game.strategy_counts == game.strategy_counts
    assert np.array_equal(back.game.utilities, game.utilities)
    assert back.game.c == game.c
    assert np.array_equal(back.noise.scales, noise.scales)
    assert back.meta == {"note": "x"}


def test_game_file_io(tmp_path, rng):
    game = random_game(rng, (2, 2))
    path = tmp_path / "g.json"
    save_game(GameFile(game), str(path))
    back = load_game(str(path))
    assert np.array_equal(back.game.utilities, game.utilities)
    assert back.noise is None


def test_game_from_dict_validation(rng):
    game = random_game(rng, (2, 2))
    doc = game_to_dict(GameFile(game))
    doc["players"] = 3
    with pytest.raises(ValueError):
        game_from_dict(doc)
    doc2 = game_to_dict(GameFile(game))
    doc2["noise"] = {"kind": "gaussian", "d": 1.0, "scale_alpha": 1.0, "scale_beta": 1.0}
    with pytest.raises(ValueError):
        game_from_dict(doc2)


def test_report_round_trip(tmp_path, rng):
    base = random_game(rng, (2, 2))
    oracle = deterministic_oracle(base)
    config = sampling.EstimationConfig(eps=0.1, delta=0.05, c=base.c)
    report = sampling.gs(oracle, 8, config)
    path = tmp_path / "r.json"
    save_report(report, str(path))
    back = load_report(str(path))
    assert np.array_equal(back.estimates, report.estimates)
    assert back.iteration_log == report.iteration_log
    assert back.success == report.success


# -------------------------------------------------------------- experiments


def test_resolve_config_rejects_unknown_and_bad_types():
    with pytest.raises(ConfigError, match="unknown configuration key"):
        resolve_config("eps-nash", {"bogus": 1})
    with pytest.raises(ConfigError, match="expected"):
        resolve_config("eps-nash", {"games": "ten"})
    cfg = resolve_config("eps-nash", {"games": 3})
    assert cfg["games"] == 3
    with pytest.raises(KeyError):
        resolve_config("nope", None)


def test_small_experiments_have_schema_columns():
    small = {
        "eps-nash": {"games": 2, "k": 4, "eps_points": 5},
        "welfare-error": {"perturbations": 3},
        "coverage": {
            "eb_blocks": 1, "eb_trials": 50, "eb_m": 50,
            "psp_blocks": 1, "psp_runs": 2,
        },
        "anarchy-gap": {"draws": 2, "lambdas": [0.0, 1.0]},
    }
    for name, overrides in small.items():
        rows = run_experiment(name, overrides, seed=1)
        assert rows, name
        for row in rows:
            assert set(row) == set(SCHEMAS[name]), name
            assert row["schema_version"] == f"{name}/1"


def test_experiment_rows_deterministic():
    a = run_experiment("eps-nash", {"games": 2, "k": 4, "eps_points": 5}, seed=3)
    b = run_experiment("eps-nash", {"games": 2, "k": 4, "eps_points": 5}, seed=3)
    assert a == b


# --------------------------------------------------------------------- CLI


def test_cli_gen_and_props(tmp_path):
    game_path = tmp_path / "game.json"
    r = _run("--out", str(game_path), "gen", "fixture", "--name", "gamma1")
    assert r.returncode == 0, r.stderr
    gf = load_game(str(game_path))
    assert gf.game.num_players == 3
    assert gf.meta["generator"] == "fixture"

    r = _run("props", str(game_path), "--eps-list", "0", "--lambda-list", "0")
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["eps_nash"]["0.0"] == [[0, 0, 0], [1, 1, 1]]
    # gap at Lambda=0 is best minus worst welfare over all profiles
    from egta.properties import WelfareSpec, welfare_table
    from egta.simworld import fixture_gamma1

    w = welfare_table(fixture_gamma1(), WelfareSpec("utilitarian_sum"))
    assert doc["anarchy_gap"]["0.0"] == pytest.approx(float(w.max() - w.min()))


def test_cli_props_csv_format(tmp_path):
    game_path = tmp_path / "game.json"
    assert _run("--out", str(game_path), "gen", "counterexample").returncode == 0
    out = tmp_path / "props.csv"
    r = _run("--format", "csv", "--out", str(out), "props", str(game_path))
    assert r.returncode == 0, r.stderr
    rows = list(csv.DictReader(out.open()))
    assert rows and all(row["schema_version"] == "props/1" for row in rows)


def test_cli_psp_verify_round_trip(tmp_path):
    game_path = tmp_path / "game.json"
    r = _run(
        "--seed", "3", "--out", str(game_path),
        "gen", "rz", "--k", "3", "--noise-d", "1.0",
    )
    assert r.returncode == 0, r.stderr
    report_path = tmp_path / "report.json"
    r = _run(
        "--seed", "3", "--out", str(report_path),
        "psp", str(game_path), "--eps", "0.4", "--delta", "0.1",
    )
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "report.json.log.csv").exists()
    log_rows = list(csv.DictReader((tmp_path / "report.json.log.csv").open()))
    assert log_rows[0]["schema_version"] == "psp-log/1"

    ok = _run("verify", str(game_path), str(report_path), "--eps", "0.4")
    assert ok.returncode == 0 and ok.stdout.strip() == "ok"
    bad = _run("verify", str(game_path), str(report_path), "--eps", "1e-6")
    assert bad.returncode == 1 and bad.stdout.strip() == "failed"


def test_cli_gs_stdout(tmp_path):
    game_path = tmp_path / "game.json"
    assert _run("--out", str(game_path), "gen", "rz", "--k", "3").returncode == 0
    r = _run("gs", str(game_path), "--m", "16", "--bound-kind", "hoeffding_bonferroni")
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["data_complexity"] == 16


def test_cli_exp_writes_csv(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"games": 2, "k": 4, "eps_points": 5}))
    out = tmp_path / "rows.csv"
    r = _run("--out", str(out), "exp", "eps-nash", "--config", str(cfg))
    assert r.returncode == 0, r.stderr
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 10
    assert list(rows[0]) == list(SCHEMAS["eps-nash"])


def test_cli_exit_codes(tmp_path):
    assert _run("gen", "marsupial").returncode == 2  # bad choice
    assert _run("props", str(tmp_path / "missing.json")).returncode == 2
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert _run("exp", "eps-nash", "--config", str(cfg)).returncode == 3
    notjson = tmp_path / "notjson.json"
    notjson.write_text("{")
    assert _run("exp", "eps-nash", "--config", str(notjson)).returncode == 3
    # missing keys in a game file are a configuration problem
    badgame = tmp_path / "badgame.json"
    badgame.write_text(json.dumps({"players": 1}))
    assert _run("props", str(badgame)).returncode == 3
    # a structurally valid file with illegal values fails at runtime
    invalid = tmp_path / "invalid.json"
    invalid.write_text(
        json.dumps({"players": 2, "strategies": [2, 2], "utilities": [9.0] * 8, "c": 1.0})
    )
    assert _run("props", str(invalid)).returncode == 4
