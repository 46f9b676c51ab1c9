"""Reference-point guided EMO algorithms and the run loop feeding the archive."""

from pbemo.algorithms.operators import poly_mutation, sbx_crossover
from pbemo.algorithms.preference import (
    asf,
    biased_weights,
    g_flag,
    pbea_fitness,
    r_dominates,
    rnsga2_survival,
)
from pbemo.algorithms.runner import (
    ALGORITHMS,
    AlgoParams,
    RunConfig,
    RunRecord,
    decomp_run_step,
    run,
    streams,
)
