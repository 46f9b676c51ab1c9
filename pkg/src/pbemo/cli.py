"""Command line entry point: ``pbemo <verb> ...``.

Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from pbemo.core import ConfigurationError, RoiSpec, objectives
from pbemo.harness import execute, load_plan
from pbemo.harness.execute import CellError
from pbemo.harness.tables import (
    best_mu_text,
    emit_plotdata,
    make_tables,
    ranks_csv,
    rank_popsizes,
    read_results,
    tables_csv,
    tables_text,
)
from pbemo.indicators import igd, igd_c, igd_plus, igd_plus_c
from pbemo.io import fmt, read_points_csv, read_solutions, write_points_csv
from pbemo.postprocess import PostprocessParams, idss, pref_postprocess
from pbemo.problems import ProblemSpec, default_reference_point, sample_front


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _roi(args, m: int) -> RoiSpec:
    z = tuple(args.z) if args.z else default_reference_point(m)
    return RoiSpec(z, args.r)


def cmd_run(args) -> int:
    if not args.config:
        raise ConfigurationError("run needs --config PLAN")
    plan = load_plan(args.config, args.out, args.seed)
    path = execute(plan, jobs=args.jobs)
    print(path)
    return 0


def cmd_postprocess(args) -> int:
    A = read_solutions(args.archive)
    m = len(A[0].f)
    rng = np.random.default_rng(args.seed)
    if args.method == "idss":
        X = idss(A, args.k, args.t_max, rng)
    else:
        X = pref_postprocess(A, PostprocessParams(args.k, args.t_max, _roi(args, m)), rng)
    if args.out:
        write_points_csv(args.out, objectives(X), header=args.header)
    else:
        for s in X:
            print(",".join(fmt(v) for v in s.f))
    return 0


def cmd_evaluate(args) -> int:
    X = read_points_csv(args.solutions)
    S = read_points_csv(args.front)
    roi = _roi(args, X.shape[1])
    for name, fn in (("igd", igd), ("igd_plus", igd_plus)):
        print(f"{name},{fmt(fn(X, S))}")
    for name, fn in (("igd_c", igd_c), ("igd_plus_c", igd_plus_c)):
        print(f"{name},{fmt(fn(X, S, roi))}")
    return 0


def cmd_tables(args) -> int:
    table = make_tables(read_results(args.results), args.evals)
    _emit(tables_csv(table) if args.csv else tables_text(table), args.out)
    return 0


def cmd_rank(args) -> int:
    cells = rank_popsizes(read_results(args.results), args.subset)
    _emit(ranks_csv(cells) if args.csv else best_mu_text(cells), args.out)
    return 0


def cmd_plotdata(args) -> int:
    _emit(emit_plotdata(read_results(args.results), args.algorithm, args.problem, args.m, args.subset), args.out)
    return 0


def cmd_front_sample(args) -> int:
    ref = sample_front(ProblemSpec(args.problem, args.m), args.count, args.seed or 0)
    if args.out:
        write_points_csv(args.out, ref.points, header=args.header)
    else:
        if args.header:
            print(",".join(f"f{i + 1}" for i in range(args.m)))
        for p in ref.points:
            print(",".join(fmt(v) for v in p))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--out", default=None, help="output file or directory")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--config", default=None, help="plan file (TOML or JSON)")
    common.add_argument("-v", "--verbose", action="store_true")

    roi = argparse.ArgumentParser(add_help=False)
    roi.add_argument("--z", type=float, nargs="+", help="reference point (default: per-m default)")
    roi.add_argument("--r", type=float, default=0.1, help="ROI radius")

    p = argparse.ArgumentParser(prog="pbemo", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("run", parents=[common], help="execute an experiment plan")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("postprocess", parents=[common, roi], help="select a subset from an archive")
    s.add_argument("archive", help="archive JSON (full solutions) or CSV (objectives)")
    s.add_argument("--method", choices=["pp", "idss"], default="pp")
    s.add_argument("--k", type=int, default=100)
    s.add_argument("--t-max", type=int, default=10_000)
    s.add_argument("--header", action="store_true")
    s.set_defaults(func=cmd_postprocess)

    s = sub.add_parser("evaluate", parents=[common, roi], help="indicator values of a point set")
    s.add_argument("solutions", help="CSV of objective vectors")
    s.add_argument("--front", required=True, help="CSV of Pareto-front samples")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("tables", parents=[common], help="POP / UA-IDSS / UA-PP comparison tables")
    s.add_argument("results")
    s.add_argument("--evals", type=int, default=None)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("rank", parents=[common], help="best population size per budget")
    s.add_argument("results")
    s.add_argument("--subset", default="UA-PP")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("plotdata", parents=[common], help="indicator series for plotting")
    s.add_argument("results")
    s.add_argument("--algorithm", required=True)
    s.add_argument("--problem", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--subset", default="UA-PP")
    s.set_defaults(func=cmd_plotdata)

    s = sub.add_parser("front-sample", parents=[common], help="sample a true Pareto front to CSV")
    s.add_argument("--problem", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--count", type=int, default=None)
    s.add_argument("--header", action="store_true")
    s.set_defaults(func=cmd_front_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigurationError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
