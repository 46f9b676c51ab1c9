"""
Comparing subsets and population sizes
======================================

A small grid is executed through the harness, then turned into a comparison
table (Wilcoxon rank-sum verdicts) and a population-size ranking
(Friedman average ranks).
"""
import tempfile
from pathlib import Path

from pbemo.harness import build_plan, execute
from pbemo.harness.tables import best_mu_text, make_tables, rank_popsizes, read_results, tables_text

out = Path(tempfile.mkdtemp())
plan = build_plan({
    "algorithms": ["R-NSGA-II", "g-NSGA-II"],
    "problems": ["DTLZ2"],
    "m": [2],
    "mu": [8, 40],
    "runs": 5,
    "max_evals": 2000,
    "evaluate_at": [1000, 2000],
    "k": 40,
}, output_dir=out)

results = execute(plan)
rows = read_results(results)
print(f"{len(rows)} rows in {results}\n")
print(tables_text(make_tables(rows)))
print(best_mu_text(rank_popsizes(rows)))
