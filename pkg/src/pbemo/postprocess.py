"""Selecting k representative solutions from an unbounded archive.

Two methods:

* :func:`idss` - iterative distance-based subset selection, which looks for a
  subset whose objective vectors, normalised with the bounds of the candidate
  set, are as uniformly spread as possible (largest minimum pairwise
  distance);
* :func:`pref_postprocess` - the preference-based method: approximate the
  region of interest around the archive member closest to the reference point,
  pad it with the nearest outsiders when it is too small, and thin it with
  IDSS when it is too large.

Nearest-solution ties go to the earliest position in the input archive.
Worst-contributor ties in IDSS go to the member that has been in the working
subset longest (the newcomer is always last), so swaps that keep the
uniformity level unchanged are taken and the search can cross plateaus.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from pbemo.core import RoiSpec, Solution, normalize_set, objectives


@dataclass(frozen=True)
class PostprocessParams:
    k: int = 100
    t_max: int = 10_000
    roi: RoiSpec | None = None

    def __post_init__(self):
        if self.k < 1 or self.t_max < 1:
            raise ValueError("k and t_max must be >= 1")


def _pairwise(P: np.ndarray) -> np.ndarray:
    # accumulate one dimension at a time so an entry depends only on its two rows
    n, m = P.shape
    d2 = np.zeros((n, n))
    for i in range(m):
        diff = P[:, i, None] - P[None, :, i]
        d2 += diff * diff
    return np.sqrt(d2)


def _min_offdiag(D: np.ndarray) -> float:
    n = len(D)
    return float(D[~np.eye(n, dtype=bool)].min())


def normalize_with(F: np.ndarray, lo: np.ndarray, span: np.ndarray) -> np.ndarray:
    """Map ``F`` with fixed bounds; zero-span dimensions map to 0."""
    safe = np.where(span > 0, span, 1.0)
    return np.where(span > 0, (F - lo) / safe, 0.0)


def uniformity_of(F: np.ndarray, bounds: tuple[np.ndarray, np.ndarray] | None = None) -> float:
    """Minimum pairwise distance between the normalised rows of ``F``.

    Normalisation uses the min/max of ``F`` itself unless ``bounds`` (lower
    corner, span) are given.
    """
    F = np.asarray(F, dtype=float)
    if len(F) < 2:
        raise ValueError("uniformity needs at least two solutions")
    P = normalize_set(F) if bounds is None else normalize_with(F, *bounds)
    return _min_offdiag(_pairwise(P))


def uniformity(X, bounds=None) -> float:
    X = list(X)
    if len(X) < 2:
        raise ValueError("uniformity needs at least two solutions")
    return uniformity_of(objectives(X), bounds)


@njit(cache=True)
def _swap_loop(P, cur, draws):
    """Run the add-one/drop-worst iterations in place on ``cur`` (k+1 slots).

    Distances are accumulated dimension by dimension, exactly as in
    :func:`_pairwise`, so scores match a fresh recomputation bit for bit.
    """
    N, m = P.shape
    k = cur.shape[0] - 1
    inside = np.zeros(N, dtype=np.bool_)
    for i in range(k):
        inside[cur[i]] = True
    outsiders = np.empty(N - k, dtype=np.int64)
    D = np.full((k + 1, k + 1), np.inf)
    for i in range(k):
        for j in range(i + 1, k):
            acc = 0.0
            for d in range(m):
                diff = P[cur[i], d] - P[cur[j], d]
                acc += diff * diff
            D[i, j] = D[j, i] = np.sqrt(acc)
    scores = np.empty(k + 1)
    for t in range(draws.shape[0]):
        c = 0
        for i in range(N):
            if not inside[i]:
                outsiders[c] = i
                c += 1
        new = outsiders[draws[t]]
        cur[k] = new
        for i in range(k):
            acc = 0.0
            for d in range(m):
                diff = P[cur[i], d] - P[new, d]
                acc += diff * diff
            D[i, k] = D[k, i] = np.sqrt(acc)
        D[k, k] = np.inf
        # first minimum pair in row-major order
        a, b, dmin = 0, 1, np.inf
        for i in range(k + 1):
            for j in range(k + 1):
                if D[i, j] < dmin:
                    dmin = D[i, j]
                    a, b = i, j
        for i in range(k + 1):
            scores[i] = dmin
        for skip in (a, b):
            best = np.inf
            for i in range(k + 1):
                if i == skip:
                    continue
                for j in range(k + 1):
                    if j != skip and D[i, j] < best:
                        best = D[i, j]
            scores[skip] = best
        top = scores.max()
        w = 0
        while scores[w] != top:
            w += 1
        inside[new] = True
        inside[cur[w]] = False
        # drop slot w and shift the rest down, keeping the newcomer last
        for i in range(w, k):
            cur[i] = cur[i + 1]
        for i in range(w, k):
            for j in range(k + 1):
                D[i, j] = D[i + 1, j]
        for j in range(w, k):
            for i in range(k):
                D[i, j] = D[i, j + 1]
    return cur


def _idss_indices(F: np.ndarray, k: int, t_max: int, rng: np.random.Generator) -> np.ndarray:
    N = len(F)
    if N <= k:
        return np.arange(N)
    chosen = rng.choice(N, size=k, replace=False)
    if k < 2:
        # uniformity of a single survivor is undefined; keep the random pick
        return np.sort(chosen)
    # bounds come from the whole candidate set, so the subset cannot shrink
    # toward a corner and rescale itself
    P = np.ascontiguousarray(normalize_set(F))
    cur = np.empty(k + 1, dtype=np.int64)
    cur[:k] = chosen
    draws = rng.integers(N - k, size=t_max)
    _swap_loop(P, cur, draws)
    return np.sort(cur[:k])


def idss(A, k: int, t_max: int = 10_000, rng=None) -> list[Solution]:
    """Iterative distance-based subset selection of ``k`` solutions from ``A``."""
    A = list(A)
    if len(A) <= k:
        return A
    rng = np.random.default_rng(rng)
    idx = _idss_indices(objectives(A), k, t_max, rng)
    return [A[i] for i in idx]


def _roi_indices(F: np.ndarray, z: np.ndarray, r: float, k: int) -> tuple[np.ndarray, int]:
    """Indices of the approximated ROI (padded to k if needed) and of the centre."""
    c = int(np.argmin(np.sqrt(np.sum((F - z) ** 2, axis=1))))
    dc = np.sqrt(np.sum((F - F[c]) ** 2, axis=1))
    inside = dc <= r
    if inside.sum() < k:
        rest = np.flatnonzero(~inside)
        rest = rest[np.argsort(dc[rest], kind="stable")]
        inside[rest[: k - int(inside.sum())]] = True
    return np.flatnonzero(inside), c


def pref_postprocess(A, params: PostprocessParams, rng=None) -> list[Solution]:
    """Preference-based selection of ``params.k`` solutions around the reference point."""
    A = list(A)
    k = params.k
    if len(A) <= k:
        return A
    if params.roi is None:
        raise ValueError("pref_postprocess needs params.roi")
    F = objectives(A)
    idx, _ = _roi_indices(F, np.asarray(params.roi.z), params.roi.r, k)
    if len(idx) > k:
        rng = np.random.default_rng(rng)
        idx = idx[_idss_indices(F[idx], k, params.t_max, rng)]
    return [A[i] for i in idx]
