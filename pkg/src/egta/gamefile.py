"""JSON game files and JSON run reports.

The utilities array round-trips bit-exactly: floats are serialized with
Python's shortest round-trip decimal representation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from egta.nfg import NormalFormGame
from egta.sampling import RunReport
from egta.simworld import NoiseSpec


@dataclass(frozen=True)
class GameFile:
    game: NormalFormGame
    noise: NoiseSpec | None = None
    meta: dict[str, Any] | None = None


def game_to_dict(gf: GameFile) -> dict[str, Any]:
    g = gf.game
    doc: dict[str, Any] = {
        "players": g.num_players,
        "strategies": list(g.strategy_counts),
        "utilities": [float(u) for u in g.utilities],
        "c": g.c,
    }
    if gf.noise is not None:
        n = gf.noise
        doc["noise"] = {
            "kind": "scaled_bernoulli",
            "d": n.d,
            "scale_alpha": n.scale_alpha,
            "scale_beta": n.scale_beta,
            "scales": None if n.scales is None else [float(x) for x in n.scales.reshape(-1)],
        }
    doc["meta"] = gf.meta or {}
    return doc


def game_from_dict(doc: dict[str, Any]) -> GameFile:
    counts = tuple(int(k) for k in doc["strategies"])
    if int(doc["players"]) != len(counts):
        raise ValueError("player count does not match strategies list")
    game = NormalFormGame(counts, np.asarray(doc["utilities"], dtype=np.float64), float(doc["c"]))
    noise = None
    if doc.get("noise"):
        n = doc["noise"]
        if n.get("kind", "scaled_bernoulli") != "scaled_bernoulli":
            raise ValueError(f"unknown noise kind {n.get('kind')!r}")
        scales = n.get("scales")
        if scales is not None:
            scales = np.asarray(scales, dtype=np.float64).reshape(
                game.num_players, game.num_profiles
            )
        noise = NoiseSpec(float(n["d"]), float(n["scale_alpha"]), float(n["scale_beta"]), scales)
    return GameFile(game, noise, doc.get("meta") or {})


def save_game(gf: GameFile, path: str) -> None:
    with open(path, "w") as f:
        json.dump(game_to_dict(gf), f, indent=1)
        f.write("\n")


def load_game(path: str) -> GameFile:
    with open(path) as f:
        return game_from_dict(json.load(f))


def report_to_dict(report: RunReport) -> dict[str, Any]:
    return {
        "estimates": [float(x) for x in report.estimates.reshape(-1)],
        "radii": [float(x) for x in report.radii.reshape(-1)],
        "index_mask": [bool(x) for x in report.index_mask.reshape(-1)],
        "shape": list(report.estimates.shape),
        "data_complexity": report.data_complexity,
        "query_complexity": report.query_complexity,
        "per_profile_queries": [int(x) for x in report.per_profile_queries],
        "iteration_log": [list(row) for row in report.iteration_log],
        "success": report.success,
    }


def report_from_dict(doc: dict[str, Any]) -> RunReport:
    shape = tuple(doc["shape"])
    return RunReport(
        estimates=np.asarray(doc["estimates"], dtype=np.float64).reshape(shape),
        radii=np.asarray(doc["radii"], dtype=np.float64).reshape(shape),
        index_mask=np.asarray(doc["index_mask"], dtype=bool).reshape(shape),
        data_complexity=int(doc["data_complexity"]),
        query_complexity=int(doc["query_complexity"]),
        per_profile_queries=np.asarray(doc["per_profile_queries"], dtype=np.int64),
        iteration_log=tuple(tuple(row) for row in doc["iteration_log"]),
        success=bool(doc["success"]),
    )


def save_report(report: RunReport, path: str) -> None:
    with open(path, "w") as f:
        json.dump(report_to_dict(report), f, indent=1)
        f.write("\n")


def load_report(path: str) -> RunReport:
    with open(path) as f:
        return report_from_dict(json.load(f))
