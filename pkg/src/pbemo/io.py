"""CSV and JSON interchange for point sets, archives and run records."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from pbemo.archive import Archive
from pbemo.core import Solution


def fmt(v: float) -> str:
    """Shortest round-trip decimal."""
    return repr(float(v))


def write_points_csv(path, F, header: bool = False) -> None:
    F = np.atleast_2d(np.asarray(F, dtype=float))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header:
            w.writerow([f"f{i + 1}" for i in range(F.shape[1])])
        for row in F:
            w.writerow([fmt(v) for v in row])


def read_points_csv(path) -> np.ndarray:
    """Read a point matrix; a non-numeric first row is treated as a header."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if rows:
        try:
            [float(v) for v in rows[0]]
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no points")
    return np.asarray([[float(v) for v in r] for r in rows])


def solutions_to_json(solutions) -> list[dict]:
    return [s.to_dict() for s in solutions]


def write_archive_json(path, solutions) -> None:
    Path(path).write_text(json.dumps({"solutions": solutions_to_json(solutions)}, indent=1) + "\n")


def read_solutions(path) -> list[Solution]:
    """Solutions from an archive JSON file, or objective-only rows from a CSV file."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        doc = json.loads(path.read_text())
        items = doc["solutions"] if isinstance(doc, dict) else doc
        return [Solution.from_dict(d, seq=i) for i, d in enumerate(items)]
    F = read_points_csv(path)
    return [Solution(np.empty(0), f, 0, i) for i, f in enumerate(F)]


def record_to_dict(record) -> dict:
    cfg = record.config
    return {
        "config": {
            "algorithm": cfg.algorithm,
            "problem": cfg.problem.id,
            "m": cfg.problem.m,
            "n": cfg.problem.n,
            "mu": cfg.mu,
            "max_evals": cfg.max_evals,
            "seed": cfg.seed,
            "z": list(cfg.roi.z),
            "r": cfg.roi.r,
        },
        "snapshots": {
            str(c): {"population": solutions_to_json(pop), "archive": solutions_to_json(arc)}
            for c, (pop, arc) in sorted(record.snapshots.items())
        },
        "final_population": solutions_to_json(record.final_population),
        "final_archive": solutions_to_json(record.final_archive.members),
    }


def write_record_json(path, record) -> None:
    Path(path).write_text(json.dumps(record_to_dict(record)) + "\n")


def write_record_csv(path, record) -> None:
    """Objective vectors per snapshot: ``evals,set,f1..fm``."""
    m = record.config.problem.m
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["evals", "set"] + [f"f{i + 1}" for i in range(m)])
        for c, (pop, arc) in sorted(record.snapshots.items()):
            for name, sols in (("population", pop), ("archive", arc)):
                for s in sols:
                    w.writerow([c, name] + [fmt(v) for v in s.f])


def archive_from_json(path) -> Archive:
    return Archive(read_solutions(path))


__all__ = [
    "archive_from_json",
    "fmt",
    "read_points_csv",
    "read_solutions",
    "record_to_dict",
    "write_archive_json",
    "write_points_csv",
    "write_record_csv",
    "write_record_json",
]
