from __future__ import annotations

import numpy as np


def sort_fronts(D: np.ndarray) -> list[np.ndarray]:
    """Peel fronts off a strict preference matrix (``D[i, j]``: i beats j).

    Anything left over when no unbeaten element remains (a cyclic relation)
    goes into one final front.
    """
    n = len(D)
    beaten_by = D.sum(axis=0).astype(np.int64)
    done = np.zeros(n, dtype=bool)
    fronts = []
    while not done.all():
        cur = np.flatnonzero((beaten_by == 0) & ~done)
        if len(cur) == 0:
            cur = np.flatnonzero(~done)
        fronts.append(cur)
        done[cur] = True
        beaten_by -= D[cur].sum(axis=0)
    return fronts


def crowding_distance(F: np.ndarray) -> np.ndarray:
    n, m = F.shape
    cd = np.zeros(n)
    if n <= 2:
        cd[:] = np.inf
        return cd
    for i in range(m):
        order = np.argsort(F[:, i], kind="stable")
        fi = F[order, i]
        span = fi[-1] - fi[0]
        cd[order[0]] = cd[order[-1]] = np.inf
        if span > 0:
            cd[order[1:-1]] += (fi[2:] - fi[:-2]) / span
    return cd


def crowded_order(F: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Indices ordered by (front, descending crowding distance), stable."""
    out = []
    for front in sort_fronts(D):
        cd = crowding_distance(F[front])
        out.extend(front[np.argsort(-cd, kind="stable")])
    return np.asarray(out, dtype=np.int64)
