"""Experiment orchestration: plans, batch execution and result tables."""

from pbemo.harness.execute import CellError, execute
from pbemo.harness.plan import Cell, ExperimentPlan, build_plan, load_plan
from pbemo.harness.tables import (
    emit_plotdata,
    make_tables,
    non_monotone,
    rank_popsizes,
    read_results,
)
