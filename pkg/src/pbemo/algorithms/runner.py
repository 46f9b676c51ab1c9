"""Run configuration, the shared run loop and the five algorithms.

Random streams: each run derives three independent generators from its seed,
``SeedSequence(seed, spawn_key=(i,))`` for i = 0 (``init``: initial
population), 1 (``variation``: crossover and mutation) and 2 (``selection``:
tournaments and neighbourhood draws). Keep this mapping stable; changing it
changes every recorded result.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from pbemo.archive import Archive, default_schedule
from pbemo.core import ConfigurationError, RoiSpec, Solution, objectives
from pbemo.problems import ProblemSpec, evaluate_many
from pbemo.algorithms import preference as pref
from pbemo.algorithms.operators import ETA_C, ETA_M, make_offspring, poly_mutation, sbx_crossover
from pbemo.algorithms.sorting import crowded_order

logger = logging.getLogger(__name__)

STREAMS = ("init", "variation", "selection")
NSGA_FAMILY = ("R-NSGA-II", "r-NSGA-II", "g-NSGA-II", "PBEA")
ALGORITHMS = NSGA_FAMILY + ("MOEA/D-ASF",)


def streams(seed: int) -> dict[str, np.random.Generator]:
    return {
        name: np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(i,)))
        for i, name in enumerate(STREAMS)
    }


@dataclass(frozen=True)
class AlgoParams:
    epsilon_clear: float = 0.001
    delta: float = 0.3
    rho: float = 1e-4
    kappa: float = 0.05
    s_min: float = pref.S_MIN
    weights: tuple | None = None
    neighbourhood: int = 20
    eta_c: float = ETA_C
    eta_m: float = ETA_M
    pm: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.delta <= 1.0:
            raise ConfigurationError("delta must lie in [0, 1]")
        if not (self.rho > 0 and self.kappa > 0 and self.s_min > 0):
            raise ConfigurationError("rho, kappa and s_min must be positive")
        if self.epsilon_clear < 0:
            raise ConfigurationError("epsilon_clear must be non-negative")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(tuple(float(v) for v in w) for w in self.weights))


@dataclass(frozen=True)
class RunConfig:
    algorithm: str
    problem: ProblemSpec
    mu: int
    max_evals: int
    seed: int
    roi: RoiSpec
    algo_params: AlgoParams = field(default_factory=AlgoParams)
    schedule: tuple[int, ...] = field(default_factory=default_schedule)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if self.mu < 2:
            raise ConfigurationError("mu must be >= 2")
        if self.max_evals < self.mu:
            raise ConfigurationError("max_evals must be >= mu")
        if self.roi.m != self.problem.m:
            raise ConfigurationError("reference point length differs from the number of objectives")
        sched = tuple(int(c) for c in self.schedule)
        if any(b <= a for a, b in zip(sched, sched[1:])) or (sched and sched[0] <= 0):
            raise ConfigurationError("schedule must be strictly increasing positive integers")
        object.__setattr__(self, "schedule", sched)
        w = self.algo_params.weights
        if self.algorithm == "MOEA/D-ASF" and w is not None and len(w) != self.mu:
            raise ConfigurationError("need exactly mu weight vectors")


@dataclass
class RunRecord:
    config: RunConfig
    snapshots: dict[int, tuple[list[Solution], list[Solution]]]
    final_population: list[Solution]
    final_archive: Archive
    evaluations: int = 0


class _Evaluator:
    """Counts evaluations, feeds the archive and takes checkpoint snapshots."""

    def __init__(self, problem: ProblemSpec, max_evals: int, schedule, archive: Archive):
        self.problem = problem
        self.max_evals = max_evals
        self.count = 0
        self.archive = archive
        self.checkpoints = {c for c in schedule if c <= max_evals}
        self.snapshots: dict[int, tuple[list[Solution], list[Solution]]] = {}
        self.population: list[Solution] = []

    @property
    def remaining(self) -> int:
        return self.max_evals - self.count

    def __call__(self, X, into: list | None = None) -> list[Solution]:
        X = np.atleast_2d(X)
        if len(X) > self.remaining:
            raise RuntimeError("evaluation budget exceeded")
        F = evaluate_many(self.problem, X)
        out = []
        for x, f in zip(X, F):
            self.count += 1
            s = Solution(x, f, self.count)
            out.append(s)
            self.archive.submit(s)
            if into is not None:
                into.append(s)
            if self.count in self.checkpoints:
                self.archive.flush()
                self.snapshots[self.count] = (list(self.population), list(self.archive.members))
        return out


class _Algorithm:
    def __init__(self, cfg: RunConfig, ev: _Evaluator):
        self.cfg = cfg
        self.ev = ev
        self.rng = streams(cfg.seed)
        self.z = np.asarray(cfg.roi.z)
        self.params = cfg.algo_params
        # shared with the evaluator so snapshots see the current population
        self.population = ev.population

    def set_population(self, pop: list[Solution]) -> None:
        self.population[:] = pop

    def initialize(self) -> None:
        X = self.rng["init"].random((self.cfg.mu, self.cfg.problem.n))
        self.ev(X, into=self.population)
        self.after_init()

    def after_init(self) -> None:
        self.set_population([self.population[i] for i in self.order(objectives(self.population))])

    def order(self, F: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def step(self) -> None:
        """One generation of (mu + lambda) selection with lambda = mu (truncated by the budget)."""
        count = min(self.cfg.mu, self.ev.remaining)
        X = np.vstack([s.x for s in self.population])
        p = self.params
        kids = make_offspring(X, count, self.rng["selection"], self.rng["variation"], p.eta_c, p.eta_m, p.pm)
        union = self.population + self.ev(kids)
        idx = self.order(objectives(union))[: self.cfg.mu]
        self.set_population([union[i] for i in idx])


class RNSGA2(_Algorithm):
    def order(self, F):
        return pref.rnsga2_order(F, self.z, self.params.epsilon_clear)


class rNSGA2(_Algorithm):
    def order(self, F):
        return crowded_order(F, pref.r_dominance_matrix(F, self.z, self.params.delta))


class gNSGA2(_Algorithm):
    def order(self, F):
        return crowded_order(F, pref.g_dominance_matrix(F, self.z))


class PBEA(_Algorithm):
    def order(self, F, mu=None):
        p = self.params
        mu = len(F) if mu is None else mu
        return pref.pbea_order(F, mu, self.z, p.rho, p.kappa, p.s_min)

    def step(self):
        count = min(self.cfg.mu, self.ev.remaining)
        X = np.vstack([s.x for s in self.population])
        p = self.params
        kids = make_offspring(X, count, self.rng["selection"], self.rng["variation"], p.eta_c, p.eta_m, p.pm)
        union = self.population + self.ev(kids)
        idx = self.order(objectives(union), self.cfg.mu)
        self.set_population([union[i] for i in idx])


def decomp_run_step(
    pop: list[Solution],
    weights: np.ndarray,
    z,
    rho: float,
    evaluate,
    rng_var: np.random.Generator,
    rng_sel: np.random.Generator,
    neighbours: np.ndarray | None = None,
    budget: int | None = None,
    eta_c: float = ETA_C,
    eta_m: float = ETA_M,
    pm: float | None = None,
    inplace: bool = False,
) -> list[Solution]:
    """One generation of neighbourhood-based decomposition search.

    Subproblem i minimises ``asf(., z, weights[i], rho)``. For each subproblem in
    turn, two parents are drawn from its neighbourhood, one SBX child is mutated
    and evaluated, and it replaces every neighbour whose ASF it strictly
    improves. ``evaluate`` maps a decision vector to a :class:`Solution`.
    With ``inplace`` the replacements are written into ``pop`` as they happen.
    """
    mu = len(pop)
    weights = np.asarray(weights, dtype=float)
    if mu < 2 or len(weights) != mu:
        raise ConfigurationError("need mu >= 2 solutions and one weight vector per solution")
    if neighbours is None:
        neighbours = neighbourhoods(weights, min(20, mu))
    if not inplace:
        pop = list(pop)
    F = objectives(pop)
    current = np.array([pref.asf_many(F[i], z, weights[i], rho) for i in range(mu)])
    budget = mu if budget is None else min(budget, mu)
    for i in range(budget):
        B = neighbours[i]
        if len(B) >= 2:
            a, b = rng_sel.choice(B, size=2, replace=False)
        else:
            a, b = rng_sel.choice(mu, size=2, replace=False)
        c1, _ = sbx_crossover(pop[a].x, pop[b].x, eta_c, rng_var)
        child = evaluate(poly_mutation(c1, eta_m, pm, rng_var))
        vals = pref.asf_many(child.f, z, weights[B], rho)
        for j, v in zip(B, vals):
            if v < current[j]:
                pop[j] = child
                current[j] = v
    return pop


def neighbourhoods(weights: np.ndarray, T: int) -> np.ndarray:
    d = np.linalg.norm(weights[:, None, :] - weights[None, :, :], axis=2)
    return np.argsort(d, axis=1, kind="stable")[:, :T]


class DecompositionEA(_Algorithm):
    """MOEA/D with ASF subproblems and weights biased toward the reference direction."""

    def __init__(self, cfg, ev):
        super().__init__(cfg, ev)
        w = self.params.weights
        self.weights = np.asarray(w) if w is not None else pref.biased_weights(cfg.problem.m, cfg.mu)
        self.neighbours = neighbourhoods(self.weights, min(self.params.neighbourhood, cfg.mu))

    def after_init(self):
        pass

    def step(self):
        p = self.params

        # in place, so checkpoint snapshots see each replacement
        decomp_run_step(
            self.population, self.weights, self.z, p.rho, lambda x: self.ev(x[None, :])[0],
            self.rng["variation"], self.rng["selection"], self.neighbours,
            budget=self.ev.remaining, eta_c=p.eta_c, eta_m=p.eta_m, pm=p.pm, inplace=True,
        )


_CLASSES = {
    "R-NSGA-II": RNSGA2,
    "r-NSGA-II": rNSGA2,
    "g-NSGA-II": gNSGA2,
    "PBEA": PBEA,
    "MOEA/D-ASF": DecompositionEA,
}


def run(config: RunConfig) -> RunRecord:
    """Run one algorithm for exactly ``config.max_evals`` evaluations."""
    archive = Archive()
    ev = _Evaluator(config.problem, config.max_evals, config.schedule, archive)
    algo = _CLASSES[config.algorithm](config, ev)
    algo.initialize()
    while ev.remaining > 0:
        algo.step()
    archive.flush()
    if config.max_evals in ev.snapshots:
        # the last evaluation precedes the final survival step
        ev.snapshots[config.max_evals] = (list(algo.population), list(archive.members))
    logger.debug("%s %s m=%d mu=%d seed=%d: |A|=%d", config.algorithm, config.problem.id,
                 config.problem.m, config.mu, config.seed, len(archive))
    return RunRecord(config, ev.snapshots, list(algo.population), archive, ev.count)

