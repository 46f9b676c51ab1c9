import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import mannwhitneyu, rankdata

from pbemo.stats import SampleSet, best_treatment, friedman_ranks, rank_sum_p, wilcoxon_rank_sum


def permutation_p(a, b):
    """Exact two-sided p by enumerating every relabelling of the pooled sample."""
    pooled = list(a) + list(b)
    order = sorted(pooled)
    rank = {}
    for v in set(pooled):
        first = order.index(v) + 1
        last = len(order) - order[::-1].index(v)
        rank[v] = Fraction(first + last, 2)
    r = [rank[v] for v in pooled]
    na, N = len(a), len(pooled)
    centre = Fraction(na * (N + 1), 2)
    obs = abs(sum(r[:na]) - centre)
    hits = total = 0
    for idx in itertools.combinations(range(N), na):
        total += 1
        hits += abs(sum(r[i] for i in idx) - centre) >= obs
    return hits / total


def test_identical_samples():
    a = [0.1, 0.2, 0.3, 0.4]
    assert wilcoxon_rank_sum(a, list(a)) == (1.0, "≈")
    assert rank_sum_p([1.0] * 5, [1.0] * 7) == 1.0


def test_fully_separated_31():
    rng = np.random.default_rng(0)
    a = rng.random(31)
    b = 2 + rng.random(31)
    p, v = wilcoxon_rank_sum(a, b)
    assert v == "+" and p < 0.001
    assert wilcoxon_rank_sum(b, a)[1] == "-"


def test_textbook_instance():
    a = [1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06]
    b = [0.878, 0.647, 0.598, 2.05, 1.06, 1.29, 1.06, 3.14]
    assert rank_sum_p(a, b) == pytest.approx(permutation_p(a, b), abs=1e-6)


def test_exact_matches_enumeration(rng):
    for _ in range(60):
        na, nb = int(rng.integers(2, 9)), int(rng.integers(2, 9))
        # coarse values produce ties
        a = list(np.round(rng.random(na), 1))
        b = list(np.round(rng.random(nb) + rng.random() * 0.3, 1))
        if len(set(a + b)) == 1:
            continue
        assert abs(rank_sum_p(a, b) - permutation_p(a, b)) <= 1e-6


def test_normal_approximation_matches_scipy(rng):
    for _ in range(20):
        a = np.round(rng.random(31), 2)
        b = np.round(rng.random(25) + 0.1, 2)
        ref = mannwhitneyu(a, b, use_continuity=False, method="asymptotic").pvalue
        assert rank_sum_p(a, b) == pytest.approx(ref, rel=1e-9)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.integers(0, 6), min_size=2, max_size=12),
    st.lists(st.integers(0, 6), min_size=2, max_size=12),
)
def test_verdict_antisymmetric(a, b):
    p1, v1 = wilcoxon_rank_sum(a, b)
    p2, v2 = wilcoxon_rank_sum(b, a)
    assert p1 == pytest.approx(p2, abs=1e-12)
    assert (v1 == "+") == (v2 == "-")
    assert (v1 == "≈") == (v2 == "≈")


def test_sample_set():
    s = SampleSet([0.1, 0.2], "POP")
    assert s.values == (0.1, 0.2)
    assert rank_sum_p(s, SampleSet([0.5, 0.6, 0.7])) == pytest.approx(0.2)
    with pytest.raises(ValueError):
        SampleSet([])
    with pytest.raises(ValueError):
        SampleSet([1.0, float("nan")])


def test_friedman_examples():
    R = [[0.1, 0.5, 0.3], [0.2, 0.9, 0.4], [0.0, 0.2, 0.1]]
    assert friedman_ranks(R)[0] == 1.0
    np.testing.assert_array_equal(friedman_ranks([[1.0, 1.0, 2.0]]), [1.5, 1.5, 3.0])


def test_friedman_brute_force(rng):
    R = rng.random((5, 4))
    expected = np.zeros(4)
    for row in R:
        pos = sorted(range(4), key=lambda j: row[j])
        for r, j in enumerate(pos):
            expected[j] += r + 1
    np.testing.assert_allclose(friedman_ranks(R), expected / 5)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_friedman_rank_sums(rows, cols, seed):
    R = np.round(np.random.default_rng(seed).random((rows, cols)), 1)
    ranks = friedman_ranks(R)
    assert ranks.sum() == pytest.approx(cols * (cols + 1) / 2)
    np.testing.assert_allclose(rankdata(R, axis=1).sum(axis=1), cols * (cols + 1) / 2)
    # strictly monotone transform per row leaves ranks unchanged
    np.testing.assert_array_equal(friedman_ranks(np.exp(3 * R) - 7), ranks)


def test_friedman_rejects_missing():
    with pytest.raises(ValueError):
        friedman_ranks([[0.1, np.nan]])
    with pytest.raises(ValueError):
        friedman_ranks([0.1, 0.2])


def test_best_treatment():
    assert best_treatment([2.0, 1.0, 3.0]) == 1
    assert best_treatment([2.0, 2.0, 2.0]) == 0
    rng = np.random.default_rng(3)
    for _ in range(20):
        R = rng.random((6, 5))
        win = int(rng.integers(5))
        R[:, win] = -1.0
        assert best_treatment(friedman_ranks(R)) == win
