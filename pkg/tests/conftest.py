import numpy as np
import pytest


def brute_nondominated(F):
    """O(n^2) reference filter: set of tuples of rows that no other row dominates."""
    F = [tuple(map(float, f)) for f in F]
    keep = set()
    for a in F:
        beaten = False
        for b in F:
            if all(x <= y for x, y in zip(b, a)) and any(x < y for x, y in zip(b, a)):
                beaten = True
                break
        if not beaten:
            keep.add(a)
    return keep


def brute_nondominated_np(F, chunk=512):
    """Same filter as :func:`brute_nondominated`, comparing every pair with numpy."""
    F = np.asarray(F, dtype=float)
    keep = np.ones(len(F), dtype=bool)
    for start in range(0, len(F), chunk):
        A = F[start : start + chunk]
        le = np.all(F[None, :, :] <= A[:, None, :], axis=2)
        lt = np.any(F[None, :, :] < A[:, None, :], axis=2)
        keep[start : start + chunk] = ~np.any(le & lt, axis=1)
    return {tuple(map(float, f)) for f in F[keep]}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
