"""Comparison tables, population-size rankings and plot series from a results file."""
from __future__ import annotations

import csv
import logging
import warnings
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from pbemo.harness.plan import SUBSETS
from pbemo.io import fmt
from pbemo.problems import PROBLEM_IDS
from pbemo.stats import best_treatment, friedman_ranks, wilcoxon_rank_sum

logger = logging.getLogger(__name__)

# (first, second) pairs compared in every table row
COMPARISONS = (("UA-IDSS", "POP"), ("UA-PP", "POP"), ("UA-PP", "UA-IDSS"))


@dataclass(frozen=True)
class Row:
    algorithm: str
    problem: str
    m: int
    mu: int
    seed: int
    evals: int
    subset: str
    indicator: str
    value: float


def read_results(path) -> list[Row]:
    with open(path, newline="") as fh:
        return [
            Row(r["algorithm"], r["problem"], int(r["m"]), int(r["mu"]), int(r["seed"]),
                int(r["evals"]), r["subset"], r["indicator"], float(r["value"]))
            for r in csv.DictReader(fh)
        ]


def _problem_key(p: str):
    return (PROBLEM_IDS.index(p) if p in PROBLEM_IDS else len(PROBLEM_IDS), p)


@dataclass
class TableRow:
    algorithm: str
    problem: str
    m: int
    mu: int
    evals: int
    means: dict[str, float]
    verdicts: dict[tuple[str, str], str]
    best: str
    second: str | None


def make_tables(rows, evals: int | None = None) -> list[TableRow]:
    """One row per (algorithm, problem, m, mu): mean per subset kind plus Wilcoxon verdicts.

    Uses the largest evaluation count of each group unless ``evals`` is given.
    """
    groups: dict[tuple, dict[int, dict[str, dict[int, float]]]] = defaultdict(
        lambda: defaultdict(lambda: defaultdict(dict)))
    for r in rows:
        groups[(r.algorithm, r.problem, r.m, r.mu)][r.evals][r.subset][r.seed] = r.value
    kinds_seen = {r.subset for r in rows}
    if len(kinds_seen) < 2:
        raise ValueError("need results for at least two subset kinds")

    out = []
    for key in sorted(groups, key=lambda k: (k[0], _problem_key(k[1]), k[2], k[3])):
        by_evals = groups[key]
        e = evals if evals is not None else max(by_evals)
        if e not in by_evals:
            continue
        data = by_evals[e]
        means = {kind: float(np.mean([data[kind][s] for s in sorted(data[kind])]))
                 for kind in SUBSETS if kind in data}
        verdicts = {}
        for a, b in COMPARISONS:
            if a not in data or b not in data:
                continue
            va = [data[a][s] for s in sorted(data[a])]
            vb = [data[b][s] for s in sorted(data[b])]
            if len(va) < 2 or len(vb) < 2:
                warnings.warn(f"{key}: fewer than 2 seeds, verdicts omitted", stacklevel=2)
                continue
            verdicts[(a, b)] = wilcoxon_rank_sum(va, vb)[1]
        ranked = sorted(means, key=lambda k: (means[k], SUBSETS.index(k)))
        out.append(TableRow(*key, e, means, verdicts, ranked[0], ranked[1] if len(ranked) > 1 else None))
    return out


def tables_csv(table: list[TableRow]) -> str:
    lines = ["algorithm,problem,m,mu,evals," + ",".join(SUBSETS)
             + ",UA-IDSS_vs_POP,UA-PP_vs_POP,UA-PP_vs_UA-IDSS,best,second"]
    for t in table:
        cells = [t.algorithm, t.problem, str(t.m), str(t.mu), str(t.evals)]
        cells += [fmt(t.means[k]) if k in t.means else "" for k in SUBSETS]
        cells += [t.verdicts.get(c, "") for c in COMPARISONS]
        cells += [t.best, t.second or ""]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def tables_text(table: list[TableRow]) -> str:
    """Aligned text in the usual layout: POP, UA-IDSS (vs POP), UA-PP (vs POP, vs UA-IDSS)."""
    header = ["Algorithm", "Problem", "m", "mu", "evals", "POP", "UA-IDSS", "UA-PP"]
    body = []
    for t in table:
        def cell(kind, comps):
            if kind not in t.means:
                return "-"
            mark = "**" if t.best == kind else ("*" if t.second == kind else "")
            v = f"{mark}{t.means[kind]:.4f}"
            marks = [t.verdicts[c] for c in comps if c in t.verdicts]
            return v + (f" ({', '.join(marks)})" if marks else "")

        body.append([t.algorithm, t.problem, str(t.m), str(t.mu), str(t.evals),
                     cell("POP", ()), cell("UA-IDSS", (COMPARISONS[0],)),
                     cell("UA-PP", (COMPARISONS[1], COMPARISONS[2]))])
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header] + body]
    return "\n".join(lines) + "\n** best, * second best\n"


@dataclass
class RankCell:
    algorithm: str
    m: int
    evals: int
    mus: tuple[int, ...]
    ranks: tuple[float, ...]

    @property
    def best_mu(self) -> int:
        return self.mus[best_treatment(self.ranks)]


def rank_popsizes(rows, subset: str = "UA-PP") -> list[RankCell]:
    """Friedman average ranks of the population sizes per (algorithm, m, evals).

    Blocks are (problem, seed) pairs; every block must have a value for every mu.
    """
    data: dict[tuple, dict[tuple, dict[int, float]]] = defaultdict(lambda: defaultdict(dict))
    for r in rows:
        if r.subset == subset:
            data[(r.algorithm, r.m, r.evals)][(r.problem, r.seed)][r.mu] = r.value
    if not data:
        raise ValueError(f"no rows for subset {subset!r}")
    out = []
    for key in sorted(data):
        blocks = data[key]
        mus = sorted({mu for b in blocks.values() for mu in b})
        matrix = []
        for (problem, seed) in sorted(blocks, key=lambda b: (_problem_key(b[0]), b[1])):
            missing = [mu for mu in mus if mu not in blocks[(problem, seed)]]
            if missing:
                raise ValueError(f"missing result: algorithm={key[0]} problem={problem} "
                                 f"mu={missing[0]} seed={seed} (m={key[1]}, evals={key[2]})")
            matrix.append([blocks[(problem, seed)][mu] for mu in mus])
        if len(mus) == 1:
            ranks = (1.0,)
        else:
            ranks = tuple(float(v) for v in friedman_ranks(np.asarray(matrix)))
        out.append(RankCell(key[0], key[1], key[2], tuple(mus), ranks))
    return out


def best_mu_text(cells: list[RankCell]) -> str:
    """Best mu per algorithm (rows) and evaluation count (columns), one block per m."""
    out = []
    for m in sorted({c.m for c in cells}):
        sub = [c for c in cells if c.m == m]
        evals = sorted({c.evals for c in sub})
        algs = sorted({c.algorithm for c in sub})
        lookup = {(c.algorithm, c.evals): c.best_mu for c in sub}
        header = ["m=%d" % m] + [f"{e} FEs" for e in evals]
        body = [[a] + [str(lookup.get((a, e), "-")) for e in evals] for a in algs]
        widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
        out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header] + body]
        out.append("")
    return "\n".join(out)


def ranks_csv(cells: list[RankCell]) -> str:
    lines = ["algorithm,m,evals,mu,average_rank,best"]
    for c in cells:
        for mu, rk in zip(c.mus, c.ranks):
            lines.append(f"{c.algorithm},{c.m},{c.evals},{mu},{fmt(rk)},{int(mu == c.best_mu)}")
    return "\n".join(lines) + "\n"


def emit_plotdata(rows, algorithm: str, problem: str, m: int, subset: str = "UA-PP") -> str:
    """CSV with one line per (mu, evals): mean indicator and one column per seed."""
    sel = [r for r in rows if r.algorithm == algorithm and r.problem == problem
           and r.m == m and r.subset == subset]
    if not sel:
        raise ValueError(f"no results for {algorithm} {problem} m={m} {subset}")
    seeds = sorted({r.seed for r in sel})
    table: dict[tuple[int, int], dict[int, float]] = defaultdict(dict)
    for r in sel:
        table[(r.mu, r.evals)][r.seed] = r.value
    lines = ["mu,evals,mean," + ",".join(f"seed_{s}" for s in seeds)]
    for (mu, e) in sorted(table):
        vals = table[(mu, e)]
        mean = float(np.mean([vals[s] for s in seeds if s in vals]))
        lines.append(f"{mu},{e},{fmt(mean)}," + ",".join(fmt(vals[s]) if s in vals else "" for s in seeds))
    return "\n".join(lines) + "\n"


def non_monotone(evals, means) -> list[int]:
    """Evaluation counts at which a mean series goes up instead of down."""
    order = np.argsort(evals, kind="stable")
    e = np.asarray(evals)[order]
    v = np.asarray(means, dtype=float)[order]
    return [int(e[i]) for i in range(1, len(v)) if v[i] > v[i - 1]]
