"""DTLZ1-DTLZ4 test problems, Pareto-front samplers and default reference points.

The number of distance variables is k = 5 for DTLZ1 and k = 10 for
DTLZ2-DTLZ4, so n = m + k - 1. DTLZ4 uses the usual bias exponent 100.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pbemo.core import ConfigurationError

PROBLEM_IDS = ("DTLZ1", "DTLZ2", "DTLZ3", "DTLZ4")
DTLZ4_ALPHA = 100.0

# |S| used for IGD-family reference sets when the caller does not choose one
DEFAULT_FRONT_SIZE = {2: 10_000, 3: 10_000}
DEFAULT_FRONT_SIZE_MANY = 50_000

_REFERENCE_POINTS = {
    2: (0.6, 0.4),
    3: (0.5, 0.3, 0.2),
    4: (0.4, 0.3, 0.2, 0.1),
    5: (0.3, 0.25, 0.2, 0.15, 0.1),
    6: (0.3, 0.2, 0.15, 0.13, 0.12, 0.1),
}


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    m: int

    def __post_init__(self):
        if self.id not in PROBLEM_IDS:
            raise ConfigurationError(f"unknown problem {self.id!r}; expected one of {PROBLEM_IDS}")
        if int(self.m) < 2:
            raise ConfigurationError(f"need m >= 2, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def k(self) -> int:
        return 5 if self.id == "DTLZ1" else 10

    @property
    def n(self) -> int:
        return self.m + self.k - 1


def _g_rastrigin(xm: np.ndarray) -> np.ndarray:
    d = xm - 0.5
    return 100.0 * (xm.shape[-1] + np.sum(d * d - np.cos(20.0 * np.pi * d), axis=-1))


def _g_sphere(xm: np.ndarray) -> np.ndarray:
    d = xm - 0.5
    return np.sum(d * d, axis=-1)


def _linear_shape(xp: np.ndarray, m: int) -> np.ndarray:
    N = xp.shape[0]
    F = np.ones((N, m))
    for i in range(m):
        F[:, i] = np.prod(xp[:, : m - 1 - i], axis=1)
        if i > 0:
            F[:, i] *= 1.0 - xp[:, m - 1 - i]
    return 0.5 * F


def _spherical_shape(xp: np.ndarray, m: int) -> np.ndarray:
    theta = xp * (np.pi / 2.0)
    c, s = np.cos(theta), np.sin(theta)
    N = xp.shape[0]
    F = np.ones((N, m))
    for i in range(m):
        F[:, i] = np.prod(c[:, : m - 1 - i], axis=1)
        if i > 0:
            F[:, i] *= s[:, m - 1 - i]
    return F


def evaluate_many(p: ProblemSpec, X) -> np.ndarray:
    """Evaluate a batch of decision vectors (rows of ``X``)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != p.n:
        raise ValueError(f"{p.id} with m={p.m} expects n={p.n} variables, got {X.shape[1]}")
    if np.any(X < 0.0) or np.any(X > 1.0) or not np.all(np.isfinite(X)):
        raise ValueError("decision variables must lie in [0, 1]")
    m = p.m
    xp, xm = X[:, : m - 1], X[:, m - 1 :]
    if p.id == "DTLZ1":
        return _linear_shape(xp, m) * (1.0 + _g_rastrigin(xm))[:, None]
    if p.id == "DTLZ2":
        g = _g_sphere(xm)
    elif p.id == "DTLZ3":
        g = _g_rastrigin(xm)
    else:
        xp = xp**DTLZ4_ALPHA
        g = _g_sphere(xm)
    return _spherical_shape(xp, m) * (1.0 + g)[:, None]


def evaluate(p: ProblemSpec, x) -> np.ndarray:
    """Objective vector of a single decision vector."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("evaluate expects a single decision vector")
    return evaluate_many(p, x[None, :])[0]


@dataclass(frozen=True, eq=False)
class IndicatorRefSet:
    """Points sampled from a problem's true Pareto front."""

    points: np.ndarray
    seed: int
    count: int


def sample_front(p: ProblemSpec, count: int | None = None, seed: int = 0) -> IndicatorRefSet:
    """Sample ``count`` points uniformly at random on the analytic Pareto front.

    DTLZ1 points come from a flat Dirichlet distribution scaled by 0.5; the
    spherical fronts use absolute Gaussian vectors projected on the unit sphere.
    """
    if count is None:
        count = DEFAULT_FRONT_SIZE.get(p.m, DEFAULT_FRONT_SIZE_MANY)
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    if p.id == "DTLZ1":
        pts = 0.5 * rng.dirichlet(np.ones(p.m), size=count)
    else:
        g = np.abs(rng.standard_normal((count, p.m)))
        pts = g / np.linalg.norm(g, axis=1, keepdims=True)
    return IndicatorRefSet(pts, seed, count)


def default_reference_point(m: int) -> tuple[float, ...]:
    try:
        return _REFERENCE_POINTS[m]
    except KeyError:
        raise ConfigurationError(
            f"no default reference point for m={m}; supply z explicitly"
        ) from None
