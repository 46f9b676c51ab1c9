"""
IGD, IGD+ and their ROI-restricted versions
===========================================

IGD-C and IGD+-C only look at the reference points near the reference
point's projection on the front, so a set that spreads over the whole front
scores worse than one concentrated on the region of interest.
"""
import numpy as np

from pbemo import ProblemSpec, RoiSpec, igd, igd_c, igd_plus, igd_plus_c, roi_ref_subset, sample_front

S = sample_front(ProblemSpec("DTLZ2", 2), 10_000, seed=0)
roi = RoiSpec((0.6, 0.4), 0.1)

sub = roi_ref_subset(S, roi)
print(f"s_c = {sub.s_c}, |S'| = {len(sub.points)} of {S.count}")

t_all = np.linspace(0, np.pi / 2, 30)
spread = np.c_[np.cos(t_all), np.sin(t_all)]

angle = np.arctan2(sub.s_c[1], sub.s_c[0])
t_roi = np.linspace(angle - 0.1, angle + 0.1, 30)
focused = np.c_[np.cos(t_roi), np.sin(t_roi)]

# shifted slightly off the front so IGD and IGD+ differ
for name, X in (("whole front", spread * 1.01), ("ROI only", focused * 1.01)):
    print(f"{name:12s} igd={igd(X, S.points):.4f} igd+={igd_plus(X, S.points):.4f} "
          f"igd-c={igd_c(X, S, roi):.4f} igd+-c={igd_plus_c(X, S, roi):.4f}")
