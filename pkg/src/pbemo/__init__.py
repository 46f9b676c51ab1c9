"""Reference-point based EMO with an unbounded archive and preference-based postprocessing."""

from pbemo.core import (
    ConfigurationError,
    DimensionError,
    RoiSpec,
    Solution,
    dominates,
    euclid,
    normalize_set,
    objectives,
    weakly_dominates,
)
from pbemo.problems import ProblemSpec, default_reference_point, evaluate, sample_front
from pbemo.archive import Archive, default_schedule
from pbemo.indicators import igd, igd_c, igd_plus, igd_plus_c, roi_ref_subset
from pbemo.postprocess import PostprocessParams, idss, pref_postprocess, uniformity
from pbemo.algorithms import ALGORITHMS, AlgoParams, RunConfig, RunRecord, run

__all__ = [
    "ALGORITHMS",
    "AlgoParams",
    "Archive",
    "ConfigurationError",
    "DimensionError",
    "PostprocessParams",
    "ProblemSpec",
    "RoiSpec",
    "RunConfig",
    "RunRecord",
    "Solution",
    "default_reference_point",
    "default_schedule",
    "dominates",
    "euclid",
    "evaluate",
    "idss",
    "igd",
    "igd_c",
    "igd_plus",
    "igd_plus_c",
    "normalize_set",
    "objectives",
    "pref_postprocess",
    "roi_ref_subset",
    "run",
    "sample_front",
    "uniformity",
    "weakly_dominates",
]

__version__ = "0.1.0"
