"""Domain types, Pareto dominance and small vector utilities.

All comparisons are exact IEEE double comparisons; there is no epsilon fuzz
anywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DimensionError(ValueError):
    """Raised when two vectors that must have equal length do not."""


class ConfigurationError(ValueError):
    """Raised for invalid or unsupported run/plan parameters."""


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    return a, b


def dominates(a, b) -> bool:
    """True iff ``a`` Pareto-dominates ``b`` (minimisation)."""
    a, b = _pair(a, b)
    return bool(np.all(a <= b) and np.any(a < b))


def weakly_dominates(a, b) -> bool:
    a, b = _pair(a, b)
    return bool(np.all(a <= b))


def euclid(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.sqrt(np.sum((a - b) ** 2)))


def normalize_bounds(F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-dimension (min, range) of a point matrix; zero ranges stay zero."""
    lo = F.min(axis=0)
    return lo, F.max(axis=0) - lo


def normalize_set(F) -> np.ndarray:
    """Min-max normalise the rows of ``F`` into the unit box.

    A dimension in which every point has the same value maps to 0.
    """
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] < 2:
        raise ValueError("normalize_set needs at least two points")
    lo, span = normalize_bounds(F)
    safe = np.where(span > 0, span, 1.0)
    return np.where(span > 0, (F - lo) / safe, 0.0)


def dominance_matrix(F: np.ndarray) -> np.ndarray:
    """``D[i, j]`` is True iff row i dominates row j."""
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return le & lt


@dataclass(frozen=True)
class RoiSpec:
    """Reference point ``z`` and ROI radius ``r``."""

    z: tuple[float, ...]
    r: float = 0.1

    def __post_init__(self):
        z = tuple(float(v) for v in self.z)
        if len(z) < 2 or not all(np.isfinite(z)):
            raise ConfigurationError(f"invalid reference point {self.z!r}")
        if not self.r > 0:
            raise ConfigurationError(f"ROI radius must be positive, got {self.r!r}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "r", float(self.r))

    @property
    def m(self) -> int:
        return len(self.z)


@dataclass(frozen=True, eq=False)
class Solution:
    """A decision vector, its objective vector and the evaluation count at birth."""

    x: np.ndarray
    f: np.ndarray
    birth_eval: int = 0
    # insertion sequence number; breaks ties between equal birth_eval values
    seq: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        return {
            "x": [float(v) for v in self.x],
            "f": [float(v) for v in self.f],
            "birth_eval": int(self.birth_eval),
        }

    @classmethod
    def from_dict(cls, d: dict, seq: int = 0) -> "Solution":
        return cls(
            np.asarray(d.get("x", []), dtype=float),
            np.asarray(d["f"], dtype=float),
            int(d.get("birth_eval", 0)),
            seq,
        )


def objectives(solutions) -> np.ndarray:
    """Stack the objective vectors of a sequence of solutions into a matrix."""
    solutions = list(solutions)
    if not solutions:
        return np.empty((0, 0))
    return np.vstack([s.f for s in solutions])
