"""
Choosing k solutions from a large archive
=========================================

IDSS spreads the k solutions over the whole archive. The preference-based
postprocessing first cuts out the approximated region of interest (radius r
around the member closest to z) and only then spreads them.
"""
import numpy as np

from pbemo import PostprocessParams, ProblemSpec, RoiSpec, Solution, idss, igd_plus_c, pref_postprocess, sample_front

rng = np.random.default_rng(1)
t = np.sort(rng.random(3000)) * np.pi / 2
archive = [Solution(np.empty(0), np.array([np.cos(a), np.sin(a)]), i) for i, a in enumerate(t)]

roi = RoiSpec((0.6, 0.4), 0.1)
params = PostprocessParams(k=20, t_max=10_000, roi=roi)

ua_idss = idss(archive, 20, 10_000, rng=2)
ua_pp = pref_postprocess(archive, params, rng=3)

S = sample_front(ProblemSpec("DTLZ2", 2), seed=0)
for name, X in (("UA-IDSS", ua_idss), ("UA-PP", ua_pp)):
    F = np.array([s.f for s in X])
    print(f"{name:8s} |X|={len(X)}  f1 range [{F[:, 0].min():.3f}, {F[:, 0].max():.3f}]  "
          f"IGD+-C={igd_plus_c(F, S, roi):.5f}")

# with a tight radius only a handful of members fall inside; the rest are the nearest outsiders
few = pref_postprocess(archive, PostprocessParams(k=20, roi=RoiSpec((0.6, 0.4), 0.005)))
print("tight radius still returns", len(few), "solutions")
