"""Unbounded external archive with buffered, scheduled updates."""
from __future__ import annotations

import numpy as np
from numba import njit

from pbemo.core import Solution, objectives


def default_schedule() -> tuple[int, ...]:
    """Update checkpoints 100, 200, ..., 1000, 2000, ..., 50000."""
    return tuple(range(100, 1001, 100)) + tuple(range(2000, 50001, 1000))


@njit(cache=True)
def _beaten(P, Q, rank_p, rank_q):  # pragma: no cover - compiled
    """Rows of ``P`` dominated by a row of ``Q``, or equal to a row of ``Q`` of lower rank."""
    n, m = P.shape
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        for j in range(Q.shape[0]):
            le = True
            eq = True
            for d in range(m):
                if Q[j, d] > P[i, d]:
                    le = False
                    break
                if Q[j, d] != P[i, d]:
                    eq = False
            if le and (not eq or rank_q[j] < rank_p[i]):
                out[i] = True
                break
    return out


def _ranks(keys: np.ndarray) -> np.ndarray:
    order = np.lexsort(keys.T[::-1])
    rank = np.empty(len(keys), dtype=np.int64)
    rank[order] = np.arange(len(keys))
    return rank


def nondominated_filter(F, priority=None) -> np.ndarray:
    """Boolean mask of rows of ``F`` that survive a non-dominated filter.

    Among identical rows only the one with the smallest ``priority`` survives
    (ties on priority fall back to row order).
    """
    F = np.ascontiguousarray(F, dtype=float)
    N = len(F)
    if priority is None:
        priority = np.arange(N)
    rank = _ranks(np.column_stack([priority, np.arange(N)]).astype(np.int64))
    return ~_beaten(F, F, rank, rank)


class Archive:
    """Exact set of all non-dominated solutions submitted so far.

    Solutions are buffered by :meth:`submit` and merged by :meth:`flush`.
    Among objective-space duplicates the one with the smallest ``birth_eval``
    (then the earliest submission) is kept.
    """

    def __init__(self, members=()):
        self.members: list[Solution] = []
        self.pending: list[Solution] = []
        self._seq = 0
        for s in members:
            self.submit(s)
        self.flush()

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def submit(self, s: Solution) -> None:
        # re-stamp the sequence number so duplicate ties follow submission order
        self.pending.append(Solution(s.x, s.f, s.birth_eval, self._seq))
        self._seq += 1

    def flush(self) -> int:
        """Merge the buffer into the member set; returns the new size."""
        if not self.pending:
            return len(self.members)
        everyone = self.members + self.pending
        rank = _ranks(np.array([(s.birth_eval, s.seq) for s in everyone], dtype=np.int64))
        nm = len(self.members)
        rm, rp = rank[:nm], rank[nm:]
        P = np.ascontiguousarray(objectives(self.pending))
        keep_p = ~_beaten(P, P, rp, rp)
        if nm:
            M = np.ascontiguousarray(objectives(self.members))
            keep_p &= ~_beaten(P, M, rp, rm)
            # members form an antichain, so only surviving newcomers can evict them
            keep_m = ~_beaten(M, np.ascontiguousarray(P[keep_p]), rm, rp[keep_p])
        else:
            keep_m = np.zeros(0, dtype=bool)
        survivors = [s for s, k in zip(self.members, keep_m) if k]
        survivors += [s for s, k in zip(self.pending, keep_p) if k]
        self.members = survivors
        self.pending = []
        return len(self.members)

    def objectives(self) -> np.ndarray:
        return objectives(self.members)

    def copy(self) -> "Archive":
        a = Archive.__new__(Archive)
        a.members = list(self.members)
        a.pending = list(self.pending)
        a._seq = self._seq
        return a
