"""
Running the preference-based algorithms
=======================================

Each algorithm is run once on DTLZ2 with two objectives. Snapshots at the
archive schedule keep the population and the archive; here we score the
final population and the postprocessed archive with IGD+-C.
"""
import time

import numpy as np

from pbemo import (ALGORITHMS, PostprocessParams, ProblemSpec, RoiSpec, RunConfig, igd_plus_c,
                   objectives, pref_postprocess, run, sample_front)

problem = ProblemSpec("DTLZ2", 2)
roi = RoiSpec((0.6, 0.4), 0.1)
S = sample_front(problem, seed=0)

for alg in ALGORITHMS:
    t0 = time.perf_counter()
    rec = run(RunConfig(alg, problem, mu=40, max_evals=5000, seed=0, roi=roi))
    pop = objectives(rec.final_population)
    ua = objectives(pref_postprocess(rec.final_archive.members, PostprocessParams(k=40, roi=roi), rng=0))
    print(f"{alg:11s} |A|={len(rec.final_archive):5d}  POP={igd_plus_c(pop, S, roi):.4f}  "
          f"UA-PP={igd_plus_c(ua, S, roi):.4f}  ({time.perf_counter() - t0:.1f}s)")

# snapshots are keyed by the checkpoints that fit in the budget
print("checkpoints:", sorted(rec.snapshots)[:5], "...", sorted(rec.snapshots)[-1])
