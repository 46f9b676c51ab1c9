"""
An unbounded archive of non-dominated solutions
===============================================

Solutions are submitted as they are evaluated and merged in batches at
checkpoints. After each flush the archive holds exactly the non-dominated
subset of everything submitted so far.
"""
import numpy as np

from pbemo import Archive, Solution

rng = np.random.default_rng(0)

# points scattered above the DTLZ2 front: directions on the sphere, radii >= 1
F = np.abs(rng.normal(size=(5000, 2)))
F /= np.linalg.norm(F, axis=1, keepdims=True)
F *= 1 + 0.3 * rng.random((5000, 1))

archive = Archive()
for i, f in enumerate(F, start=1):
    archive.submit(Solution(np.empty(0), f, birth_eval=i))
    if i in (100, 1000, 5000):
        archive.flush()
        print(f"after {i:5d} submissions: |A| = {len(archive)}")

# nobody in the archive is dominated by anything ever submitted
A = archive.objectives()
dominated = [(np.all(F <= a, axis=1) & np.any(F < a, axis=1)).any() for a in A]
print("dominated members:", sum(dominated))
print("closest member to (0.6, 0.4):", A[np.argmin(np.linalg.norm(A - (0.6, 0.4), axis=1))])
