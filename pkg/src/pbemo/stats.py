"""Wilcoxon rank-sum verdicts and Friedman average rankings."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, erfc, sqrt

import numpy as np
from scipy.stats import rankdata

ALPHA = 0.05
# both samples at most this size -> exact null distribution instead of the normal approximation
EXACT_MAX_N = 8


@dataclass(frozen=True)
class SampleSet:
    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self):
        v = tuple(float(x) for x in self.values)
        if not v or not all(np.isfinite(v)):
            raise ValueError("a sample set needs at least one finite value")
        object.__setattr__(self, "values", v)


def _values(s) -> np.ndarray:
    return np.asarray(getattr(s, "values", s), dtype=float)


def _exact_two_sided(ranks2: np.ndarray, na: int, w2: int) -> float:
    """Exact two-sided p for the rank sum of ``na`` draws from doubled midranks."""
    N = len(ranks2)
    centre = na * (N + 1)
    obs = abs(w2 - centre)
    total = int(ranks2.sum())
    # counts[j][s]: number of j-subsets with doubled rank sum s
    counts = np.zeros((na + 1, total + 1), dtype=object)
    counts[0, 0] = 1
    for r in ranks2:
        r = int(r)
        for j in range(min(na, N), 0, -1):
            counts[j, r:] = counts[j, r:] + counts[j - 1, : total + 1 - r]
    sums = np.arange(total + 1)
    extreme = np.abs(sums - centre) >= obs
    hits = sum(counts[na, extreme])
    return float(min(1.0, hits / comb(N, na)))


def rank_sum_p(a, b) -> float:
    """Two-sided Wilcoxon rank-sum p-value.

    Small samples (both sizes <= ``EXACT_MAX_N``) use the exact permutation
    distribution of the midrank sum; larger ones use the normal approximation
    with tie correction and no continuity correction.
    """
    a, b = _values(a), _values(b)
    na, nb = len(a), len(b)
    if na < 2 or nb < 2:
        raise ValueError("each sample needs at least two values")
    pooled = np.concatenate([a, b])
    if np.all(pooled == pooled[0]):
        return 1.0
    ranks = rankdata(pooled)
    N = na + nb
    if na <= EXACT_MAX_N and nb <= EXACT_MAX_N:
        ranks2 = np.rint(2 * ranks).astype(np.int64)
        return _exact_two_sided(ranks2, na, int(ranks2[:na].sum()))
    w = ranks[:na].sum()
    mean = na * (N + 1) / 2.0
    _, t = np.unique(pooled, return_counts=True)
    var = na * nb / 12.0 * ((N + 1) - np.sum(t**3 - t) / (N * (N - 1)))
    zscore = (w - mean) / sqrt(var)
    return float(erfc(abs(zscore) / sqrt(2.0)))


def wilcoxon_rank_sum(a, b, alpha: float = ALPHA) -> tuple[float, str]:
    """p-value and verdict: '+' if ``a`` is significantly smaller, '-' if larger, '≈' otherwise."""
    p = rank_sum_p(a, b)
    if p >= alpha:
        return p, "≈"
    av, bv = _values(a), _values(b)
    ranks = rankdata(np.concatenate([av, bv]))
    w = ranks[: len(av)].sum()
    mean = len(av) * (len(av) + len(bv) + 1) / 2.0
    return p, "+" if w < mean else "-"


def friedman_ranks(results) -> np.ndarray:
    """Average rank of each column; rows are blocks, 1 = smallest value, ties get mid-ranks."""
    R = np.asarray(results, dtype=float)
    if R.ndim != 2 or R.shape[0] < 1 or R.shape[1] < 2:
        raise ValueError("need a 2-d matrix with >= 1 row and >= 2 columns")
    if not np.all(np.isfinite(R)):
        raise ValueError("result matrix has missing or non-finite cells")
    return rankdata(R, axis=1).mean(axis=0)


def best_treatment(ranks) -> int:
    ranks = np.asarray(ranks, dtype=float)
    if ranks.size == 0:
        raise ValueError("empty ranks")
    return int(np.argmin(ranks))
