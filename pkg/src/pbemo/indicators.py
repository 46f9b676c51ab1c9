"""IGD, IGD+ and their ROI-restricted variants IGD-C and IGD+-C."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pbemo.core import ConfigurationError, RoiSpec

_CHUNK = 2048


def _as_points(X, name: str) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.size == 0:
        raise ValueError(f"{name} must be non-empty")
    return X


def _mean_min(X, S, plus: bool) -> float:
    X = _as_points(X, "X")
    S = _as_points(S, "S")
    if X.shape[1] != S.shape[1]:
        raise ValueError("X and S have different numbers of objectives")
    total = 0.0
    for start in range(0, len(S), _CHUNK):
        diff = X[None, :, :] - S[start : start + _CHUNK, None, :]
        if plus:
            diff = np.maximum(diff, 0.0)
        d = np.sqrt(np.sum(diff * diff, axis=2))
        total += float(np.sum(d.min(axis=1)))
    return total / len(S)


def igd(X, S) -> float:
    """Mean distance from each reference point in ``S`` to its nearest point of ``X``."""
    return _mean_min(X, S, plus=False)


def igd_plus(X, S) -> float:
    """IGD with the dominance-aware distance sqrt(sum(max(x_i - s_i, 0)^2))."""
    return _mean_min(X, S, plus=True)


@dataclass(frozen=True, eq=False)
class RoiRefSubset:
    s_c: np.ndarray
    points: np.ndarray


def roi_ref_subset(S, roi: RoiSpec) -> RoiRefSubset:
    """Reference points strictly within ``roi.r`` of the point of ``S`` closest to ``z``."""
    S = getattr(S, "points", S)
    S = _as_points(S, "S")
    z = np.asarray(roi.z)
    # argmin returns the first index on ties
    c = int(np.argmin(np.sqrt(np.sum((S - z) ** 2, axis=1))))
    s_c = S[c]
    mask = np.sqrt(np.sum((S - s_c) ** 2, axis=1)) < roi.r
    return RoiRefSubset(s_c.copy(), S[mask])


def _roi_points(S, roi: RoiSpec) -> np.ndarray:
    pts = roi_ref_subset(S, roi).points
    if len(pts) == 0:
        raise ConfigurationError("ROI reference subset is empty; the reference set is too sparse for r")
    return pts


def igd_c(X, S, roi: RoiSpec) -> float:
    return igd(X, _roi_points(S, roi))


def igd_plus_c(X, S, roi: RoiSpec) -> float:
    return igd_plus(X, _roi_points(S, roi))


INDICATORS = {"igd_c": igd_c, "igd_plus_c": igd_plus_c}
