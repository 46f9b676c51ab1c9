import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from pbemo.core import ConfigurationError, RoiSpec
from pbemo.indicators import igd, igd_c, igd_plus, igd_plus_c, roi_ref_subset
from pbemo.problems import ProblemSpec, sample_front


def naive(X, S, plus=False):
    total = 0.0
    for s in S:
        best = math.inf
        for x in X:
            acc = 0.0
            for xi, si in zip(x, s):
                d = xi - si
                if plus:
                    d = max(d, 0.0)
                acc += d * d
            best = min(best, math.sqrt(acc))
        total += best
    return total / len(S)


def test_igd_examples():
    S = np.random.default_rng(0).random((15, 3))
    assert igd(S, S) == 0.0
    assert igd([[3, 4]], [[0, 0]]) == pytest.approx(5.0)


def test_igd_plus_examples():
    S = np.array([[1.0, 1.0], [2.0, 0.5]])
    assert igd_plus([[0.5, 0.5]], S) == 0.0
    assert igd_plus([[2.0, 0.0]], [[1.0, 1.0]]) == pytest.approx(1.0)


@pytest.mark.parametrize("m", [2, 3, 5])
def test_against_double_loop(m, rng):
    for _ in range(20):
        X = rng.random((rng.integers(1, 15), m))
        S = rng.random((20, m))
        assert abs(igd(X, S) - naive(X, S)) <= 1e-12
        assert abs(igd_plus(X, S) - naive(X, S, plus=True)) <= 1e-12
        assert igd_plus(X, S) <= igd(X, S)


def test_large_reference_set_chunks(rng):
    X = rng.random((30, 2))
    S = rng.random((5000, 2))
    d = np.sqrt(((S[:, None, :] - X[None]) ** 2).sum(-1)).min(1).mean()
    assert igd(X, S) == pytest.approx(d, abs=1e-12)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        igd([[0, 0]], [[0, 0, 0]])
    with pytest.raises(ValueError):
        igd(np.empty((0, 2)), [[0, 0]])


points = arrays(np.float64, st.tuples(st.integers(1, 6), st.just(3)), elements=st.floats(-5, 5))


@settings(max_examples=60, deadline=None)
@given(points, points, arrays(np.float64, 3, elements=st.floats(-5, 5)))
def test_translation_invariance(X, S, t):
    assert igd(X + t, S + t) == pytest.approx(igd(X, S), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(points, points)
def test_plus_never_exceeds_igd(X, S):
    assert igd_plus(X, S) <= igd(X, S) + 1e-15


@settings(max_examples=60, deadline=None)
@given(points, points, st.integers(0, 5), arrays(np.float64, 3, elements=st.floats(0, 1)))
def test_plus_monotone_under_improvement(X, S, i, step):
    i = i % len(X)
    better = X.copy()
    better[i] = X[i] - step
    assert igd_plus(better, S) <= igd_plus(X, S) + 1e-12


def test_roi_subset_tiny_radius():
    S = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])
    sub = roi_ref_subset(S, RoiSpec((0.6, 0.4), 1e-9))
    np.testing.assert_array_equal(sub.s_c, [0.5, 0.5])
    np.testing.assert_array_equal(sub.points, [[0.5, 0.5]])


def test_roi_subset_dtlz1_scan():
    S = sample_front(ProblemSpec("DTLZ1", 2), 2000, seed=1)
    roi = RoiSpec((0.6, 0.4), 0.1)
    sub = roi_ref_subset(S, roi)
    d = np.linalg.norm(S.points - np.array(roi.z), axis=1)
    s_c = S.points[np.argmin(d)]
    expected = [p for p in S.points if np.linalg.norm(p - s_c) < 0.1]
    np.testing.assert_array_equal(sub.s_c, s_c)
    np.testing.assert_array_equal(sub.points, expected)
    assert any(np.array_equal(p, s_c) for p in sub.points)


def test_roi_subset_huge_radius(rng):
    S = rng.random((50, 3))
    np.testing.assert_array_equal(roi_ref_subset(S, RoiSpec((0, 0, 0), 10.0)).points, S)


def test_roi_variants_compose(rng):
    roi = RoiSpec((0.6, 0.4), 0.1)
    S = sample_front(ProblemSpec("DTLZ2", 2), 1000, seed=0).points
    sub = roi_ref_subset(S, roi).points
    assert igd_c(sub, S, roi) == 0.0
    for _ in range(10):
        X = rng.random((12, 2))
        assert igd_c(X, S, roi) == igd(X, sub)
        assert igd_plus_c(X, S, roi) == igd_plus(X, sub)


def test_roi_empty_subset_is_config_error():
    # r must be positive, so an empty subset only arises through NaN rows
    S = np.array([[np.nan, np.nan]])
    with pytest.raises(ConfigurationError):
        igd_c([[0, 0]], S, RoiSpec((0.5, 0.5), 0.1))
