"""Batch execution of a plan with a resumable manifest."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path

import numpy as np

from pbemo.algorithms.runner import run
from pbemo.core import objectives
from pbemo.harness.plan import SUBSETS, Cell, ExperimentPlan
from pbemo.indicators import INDICATORS
from pbemo.io import fmt, write_record_json
from pbemo.postprocess import idss, pref_postprocess
from pbemo.problems import ProblemSpec, sample_front

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["algorithm", "problem", "m", "mu", "seed", "evals", "subset", "indicator", "value"]
RESULTS_FILE = "results.csv"
MANIFEST_FILE = "manifest.json"


class CellError(RuntimeError):
    def __init__(self, key: str, cause: BaseException):
        super().__init__(f"cell {key} failed: {cause!r}")
        self.key = key


@lru_cache(maxsize=32)
def _front(pid: str, m: int, count, seed: int) -> np.ndarray:
    return sample_front(ProblemSpec(pid, m), count, seed).points


def _subset_rng(seed: int, evals: int, kind: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, evals, kind]))


def score_cell(cell: Cell, plan: ExperimentPlan) -> list[list[str]]:
    """Run one cell and return its result rows (as formatted strings)."""
    cfg = cell.config
    record = run(cfg)
    S = _front(cfg.problem.id, cfg.problem.m, plan.front_count, plan.front_seed)
    indicator = INDICATORS[plan.indicator]
    params = plan.postprocess_params(cfg.roi)
    rows = []
    for evals in plan.checkpoints_for(cfg):
        if evals in record.snapshots:
            pop, arc = record.snapshots[evals]
        else:
            pop, arc = record.final_population, record.final_archive.members
        subsets = {
            "POP": pop,
            "UA-IDSS": idss(arc, plan.k, plan.t_max, _subset_rng(cfg.seed, evals, 1)),
            "UA-PP": pref_postprocess(arc, params, _subset_rng(cfg.seed, evals, 2)),
        }
        for kind in SUBSETS:
            value = indicator(objectives(subsets[kind]), S, cfg.roi)
            rows.append([cfg.algorithm, cfg.problem.id, str(cfg.problem.m), str(cfg.mu), str(cfg.seed),
                         str(evals), kind, plan.indicator, fmt(value)])
    if plan.save_runs:
        runs = plan.output_dir / "runs"
        runs.mkdir(parents=True, exist_ok=True)
        write_record_json(runs / f"{cell.slug}.json", record)
    return rows


def _work(args):
    cell, plan = args
    try:
        return cell.key, score_cell(cell, plan)
    except Exception as exc:  # noqa: BLE001 - reported with the cell id
        raise CellError(cell.key, exc) from exc


def fingerprint(cell: Cell, plan: ExperimentPlan) -> str:
    """Hash of everything that determines a cell's rows."""
    settings = (cell.config, plan.checkpoints_for(cell.config), plan.k, plan.r, plan.t_max,
                plan.indicator, plan.front_count, plan.front_seed)
    return hashlib.sha1(repr(settings).encode()).hexdigest()[:16]


def _rows_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def execute(plan: ExperimentPlan, jobs: int = 1) -> Path:
    """Run every cell not yet in the manifest, then rebuild the results file in grid order."""
    out = plan.output_dir
    cells_dir = out / "cells"
    cells_dir.mkdir(parents=True, exist_ok=True)
    manifest_path = out / MANIFEST_FILE
    done: dict[str, str] = {}
    if manifest_path.exists():
        done = dict(json.loads(manifest_path.read_text()).get("completed", {}))

    prints = {c.key: fingerprint(c, plan) for c in plan.cells}
    todo = [c for c in plan.cells
            if done.get(c.key) != prints[c.key] or not (cells_dir / f"{c.slug}.csv").exists()]
    logger.info("%d cells, %d to run", len(plan.cells), len(todo))
    by_key = {c.key: c for c in todo}

    def record(key, rows):
        (cells_dir / f"{by_key[key].slug}.csv").write_text(_rows_text(rows))
        done[key] = prints[key]
        manifest_path.write_text(json.dumps({"completed": dict(sorted(done.items()))}, indent=1) + "\n")

    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for key, rows in pool.map(_work, [(c, plan) for c in todo]):
                record(key, rows)
    else:
        for c in todo:
            key, rows = _work((c, plan))
            record(key, rows)

    results = out / RESULTS_FILE
    with open(results, "w", newline="") as fh:
        fh.write(",".join(RESULT_COLUMNS) + "\n")
        for c in plan.cells:
            fh.write((cells_dir / f"{c.slug}.csv").read_text())
    return results
