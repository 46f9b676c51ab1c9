"""Experiment plans: a declarative TOML or JSON document expanded into a run grid."""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

from pbemo.archive import default_schedule
from pbemo.algorithms.runner import AlgoParams, RunConfig
from pbemo.core import ConfigurationError, RoiSpec
from pbemo.indicators import INDICATORS
from pbemo.postprocess import PostprocessParams
from pbemo.problems import ProblemSpec, default_reference_point

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SUBSETS = ("POP", "UA-IDSS", "UA-PP")

DEFAULTS = {
    "algorithms": ["R-NSGA-II"],
    "problems": ["DTLZ2"],
    "m": [2],
    "mu": [100],
    "seeds": None,
    "runs": 31,
    "seed_base": 0,
    "max_evals": 50_000,
    "schedule": None,
    "evaluate_at": None,
    "k": 100,
    "r": 0.1,
    "t_max": 10_000,
    "reference_points": {},
    "indicator": "igd_plus_c",
    "front_count": None,
    "front_seed": 0,
    "algo_params": {},
    "output_dir": "results",
    "save_runs": False,
}


@dataclass(frozen=True)
class Cell:
    """One (algorithm, problem, m, mu, seed) run of the grid."""

    config: RunConfig

    @property
    def key(self) -> str:
        c = self.config
        return f"{c.algorithm}|{c.problem.id}|{c.problem.m}|{c.mu}|{c.seed}"

    @property
    def slug(self) -> str:
        return self.key.replace("/", "_").replace("|", "__")


@dataclass(frozen=True)
class ExperimentPlan:
    cells: tuple[Cell, ...]
    evaluate_at: tuple[int, ...]
    k: int
    r: float
    t_max: int
    indicator: str
    front_count: int | None
    front_seed: int
    output_dir: Path
    save_runs: bool = False

    def postprocess_params(self, roi: RoiSpec) -> PostprocessParams:
        return PostprocessParams(self.k, self.t_max, roi)

    def checkpoints_for(self, cfg: RunConfig) -> tuple[int, ...]:
        """Evaluation counts at which a run is scored."""
        pts = [c for c in cfg.schedule if c <= cfg.max_evals]
        if cfg.max_evals not in pts:
            pts.append(cfg.max_evals)
        if self.evaluate_at:
            pts = [c for c in pts if c in self.evaluate_at]
        return tuple(pts)


def load_document(path) -> dict:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return json.loads(text)
    return tomllib.loads(text)


def _as_list(v):
    return list(v) if isinstance(v, (list, tuple)) else [v]


def build_plan(doc: dict, output_dir=None, seed: int | None = None) -> ExperimentPlan:
    """Expand a plan document; keys in ``[defaults]`` are overridden by top-level keys."""
    doc = dict(doc)
    merged = dict(DEFAULTS)
    merged.update(doc.pop("defaults", {}) or {})
    unknown = set(doc) - set(DEFAULTS)
    if unknown:
        raise ConfigurationError(f"unknown plan keys: {sorted(unknown)}")
    merged.update(doc)
    if seed is not None:
        merged["seed_base"] = seed
        merged["seeds"] = None
    if merged["indicator"] not in INDICATORS:
        raise ConfigurationError(f"indicator must be one of {sorted(INDICATORS)}")

    seeds = merged["seeds"]
    if seeds is None:
        seeds = list(range(merged["seed_base"], merged["seed_base"] + int(merged["runs"])))
    seeds = [int(s) for s in _as_list(seeds)]
    if len(set(seeds)) != len(seeds):
        raise ConfigurationError("seeds must be distinct")
    schedule = tuple(merged["schedule"]) if merged["schedule"] else default_schedule()
    params = AlgoParams(**merged["algo_params"])
    refs = {int(k): tuple(v) for k, v in (merged["reference_points"] or {}).items()}

    cells = []
    for alg in _as_list(merged["algorithms"]):
        for pid in _as_list(merged["problems"]):
            for m in _as_list(merged["m"]):
                m = int(m)
                z = refs.get(m) or default_reference_point(m)
                roi = RoiSpec(z, merged["r"])
                for mu in _as_list(merged["mu"]):
                    for s in seeds:
                        cfg = RunConfig(alg, ProblemSpec(pid, m), int(mu), int(merged["max_evals"]),
                                        s, roi, params, schedule)
                        cells.append(Cell(cfg))
    out = Path(output_dir if output_dir is not None else merged["output_dir"])
    ev = merged["evaluate_at"]
    return ExperimentPlan(
        cells=tuple(cells),
        evaluate_at=tuple(int(c) for c in _as_list(ev)) if ev else (),
        k=int(merged["k"]),
        r=float(merged["r"]),
        t_max=int(merged["t_max"]),
        indicator=merged["indicator"],
        front_count=merged["front_count"],
        front_seed=int(merged["front_seed"]),
        output_dir=out,
        save_runs=bool(merged["save_runs"]),
    )


def load_plan(path, output_dir=None, seed=None) -> ExperimentPlan:
    return build_plan(load_document(path), output_dir, seed)
