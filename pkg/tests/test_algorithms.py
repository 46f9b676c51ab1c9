import itertools
import math

import numpy as np
import pytest

import pbemo.algorithms.runner as runner_mod
from pbemo.algorithms import (
    ALGORITHMS,
    AlgoParams,
    RunConfig,
    asf,
    biased_weights,
    decomp_run_step,
    g_flag,
    pbea_fitness,
    poly_mutation,
    r_dominates,
    rnsga2_survival,
    run,
    sbx_crossover,
)
from pbemo.algorithms.preference import pbea_indicator
from pbemo.algorithms.sorting import crowding_distance, sort_fronts
from pbemo.core import ConfigurationError, RoiSpec, Solution, dominance_matrix, dominates, weakly_dominates
from pbemo.problems import ProblemSpec, evaluate

Z2 = (0.6, 0.4)


def sols(F):
    return [Solution(np.zeros(1), np.asarray(f, dtype=float), i, i) for i, f in enumerate(F)]


def config(alg="R-NSGA-II", mu=8, evals=300, seed=1, m=2, pid="DTLZ2", **kw):
    z = Z2 if m == 2 else tuple([0.5] * m)
    return RunConfig(alg, ProblemSpec(pid, m), mu, evals, seed, RoiSpec(z, 0.1), **kw)


# --- scalarising and flags -------------------------------------------------

def test_asf_examples():
    z = np.array([0.3, 0.5])
    assert asf(z, z, (0.3, 0.7), 0.5) == 0.0
    assert asf(z + (0.1, 0.2), z, (1, 1), 0.0) == pytest.approx(0.2)
    assert asf(z + (0.1, 0.2), z, (1, 1), 0.1) == pytest.approx(0.23)


def test_g_flag_examples():
    assert g_flag((0.5, 0.3), Z2) == 1
    assert g_flag((0.7, 0.5), Z2) == 1
    assert g_flag((0.5, 0.5), Z2) == 0


def test_g_flag_partition(rng):
    for _ in range(500):
        m = int(rng.integers(2, 5))
        f, z = np.round(rng.random(m), 1), np.round(rng.random(m), 1)
        expected = weakly_dominates(f, z) or weakly_dominates(z, f)
        assert g_flag(f, z) == int(expected)


# --- r-dominance -----------------------------------------------------------

def test_r_dominance_subsumes_pareto(rng):
    for delta in (0.0, 0.3, 1.0):
        ctx = rng.random((5, 2))
        assert r_dominates((0.1, 0.1), (0.2, 0.3), Z2, delta, ctx)
        assert not r_dominates((0.2, 0.3), (0.1, 0.1), Z2, delta, ctx)


def test_r_dominance_equidistant_incomparable():
    ctx = [(0.0, 1.0), (1.0, 0.0), (0.5, 0.5)]
    a, b = (0.6, 0.5), (0.7, 0.4)  # both 0.1 from z along different axes
    assert not r_dominates(a, b, Z2, 0.3, ctx)
    assert not r_dominates(b, a, Z2, 0.3, ctx)


def test_r_dominance_three_point_table():
    # z = 0, context spans [0,1]^2; weighted distances are sqrt(f1^2/2 + f2^2/2):
    # ends 0.7071, middle 0.5, spread 0.2071. middle vs end: D = -1 < -0.3.
    ctx = np.array([(0.0, 1.0), (0.5, 0.5), (1.0, 0.0)])
    table = {(i, j): r_dominates(ctx[i], ctx[j], (0, 0), 0.3, ctx) for i in range(3) for j in range(3) if i != j}
    assert table == {
        (0, 1): False, (0, 2): False,
        (1, 0): True, (1, 2): True,
        (2, 0): False, (2, 1): False,
    }
    # with delta = 1 the middle no longer wins: D = -1 is not < -1
    assert not r_dominates(ctx[1], ctx[0], (0, 0), 1.0, ctx)


# --- R-NSGA-II survival ----------------------------------------------------

def manual_survivors(F, mu, z, eps):
    """The survival rule re-executed with plain lists."""
    n = len(F)
    left = list(range(n))
    order = []
    while left:
        front = [i for i in left if not any(dominates(F[j], F[i]) for j in left if j != i)]
        left = [i for i in left if i not in front]
        front.sort(key=lambda i: (math.dist(F[i], z), i))
        reps, cleared = [], set()
        for i in front:
            if i in cleared:
                continue
            reps.append(i)
            cleared |= {j for j in front if j != i and math.dist(F[i], F[j]) < eps}
        order += reps + [i for i in front if i in cleared]
    return order[:mu]


def test_rnsga2_eps_zero_keeps_nearest():
    t = np.linspace(0, np.pi / 2, 30)
    F = np.c_[np.cos(t), np.sin(t)]
    kept = [s.seq for s in rnsga2_survival(sols(F), 5, Z2, 0.0)]
    d = np.linalg.norm(F - Z2, axis=1)
    assert set(kept) == set(np.argsort(d)[:5])


def test_rnsga2_duplicates_cleared():
    F = [(0.6, 0.4), (0.6, 0.4), (0.2, 0.9), (0.9, 0.1)]
    kept = [s.seq for s in rnsga2_survival(sols(F), 3, Z2, 0.01)]
    assert sum(k in (0, 1) for k in kept) == 1


def test_rnsga2_matches_manual_rule():
    for seed in range(30):
        F = np.random.default_rng(seed).random((10, 2))
        kept = [s.seq for s in rnsga2_survival(sols(F), 4, Z2, 0.05)]
        assert kept == manual_survivors(F.tolist(), 4, Z2, 0.05)


# --- PBEA ------------------------------------------------------------------

def test_pbea_indicator_sign():
    F = np.array([[0.1, 0.2], [0.3, 0.5], [0.9, 0.0]])
    I = pbea_indicator(F, Z2, 1e-4)
    assert I[0, 1] <= 0 <= I[1, 0]


def test_pbea_identical_objectives_equal_fitness():
    fit = pbea_fitness(sols([(0.3, 0.7), (0.3, 0.7), (0.8, 0.2), (0.5, 0.5)]), Z2)
    assert fit[0] == fit[1]


def test_pbea_fitness_recomputed_by_hand():
    F = [(0.1, 0.9), (0.4, 0.6), (0.55, 0.45), (0.8, 0.3), (0.7, 0.7)]
    rho, kappa, s_min = 1e-4, 0.05, 0.1
    lo = [min(f[i] for f in F) for i in range(2)]
    hi = [max(f[i] for f in F) for i in range(2)]
    N = [[(f[i] - lo[i]) / (hi[i] - lo[i]) for i in range(2)] for f in F]
    zn = [(Z2[i] - lo[i]) / (hi[i] - lo[i]) for i in range(2)]
    s = []
    for f in N:
        t = [f[i] - zn[i] for i in range(2)]
        s.append(max(t) + rho * sum(t))
    s = [(v - min(s)) / (max(s) - min(s)) for v in s]
    I = [[max(N[a][i] - N[b][i] for i in range(2)) / max(s[b], s_min) for b in range(5)] for a in range(5)]
    c = max(abs(v) for row in I for v in row)
    expected = [sum(-math.exp(-I[b][a] / (c * kappa)) for b in range(5) if b != a) for a in range(5)]
    got = pbea_fitness(sols(F), Z2, rho, kappa, s_min)
    for a in range(5):
        assert got[a] == pytest.approx(expected[a], rel=1e-12)
    assert sorted(range(5), key=got.get) == sorted(range(5), key=lambda a: expected[a])


# --- decomposition ---------------------------------------------------------

def test_decomposition_mu_one_rejected():
    with pytest.raises(ValueError):
        biased_weights(2, 1)
    with pytest.raises(ConfigurationError):
        config("MOEA/D-ASF", mu=1)


def test_equal_weights_converge_on_one_solution():
    mu = 6
    rng = np.random.default_rng(0)
    pop = [Solution(rng.random(11), rng.random(2) + 1.0, i) for i in range(mu)]
    W = np.full((mu, 2), 0.5)
    best = Solution(np.full(11, 0.5), np.asarray(Z2), 99)

    def ideal(x):
        return best

    out = decomp_run_step(pop, W, Z2, 1e-4, ideal, rng, rng, neighbours=np.tile(np.arange(mu), (mu, 1)))
    assert all(s is best for s in out)


def test_decomposition_asf_monotone_per_subproblem():
    p = ProblemSpec("DTLZ2", 2)
    mu = 8
    W = biased_weights(2, mu)
    rng = np.random.default_rng(3)
    counter = iter(range(10**6))
    ev = lambda x: Solution(x, evaluate(p, x), next(counter))
    pop = [ev(x) for x in rng.random((mu, p.n))]
    prev = np.array([asf(s.f, Z2, W[i]) for i, s in enumerate(pop)])
    for _ in range(20):
        pop = decomp_run_step(pop, W, Z2, 1e-4, ev, rng, rng)
        cur = np.array([asf(s.f, Z2, W[i]) for i, s in enumerate(pop)])
        assert np.all(cur <= prev + 1e-15)
        prev = cur


def test_biased_weights_shape():
    for m, mu in [(2, 8), (3, 100), (5, 40)]:
        W = biased_weights(m, mu)
        assert W.shape == (mu, m)
        np.testing.assert_allclose(W.sum(axis=1), 1.0)
        assert np.all(W > 0)


# --- variation -------------------------------------------------------------

def test_sbx_identical_parents():
    p = np.random.default_rng(0).random(12)
    c1, c2 = sbx_crossover(p, p, rng=1)
    np.testing.assert_array_equal(c1, p)
    np.testing.assert_array_equal(c2, p)


def test_mutation_pm_zero_is_identity():
    c = np.random.default_rng(0).random(12)
    np.testing.assert_array_equal(poly_mutation(c, pm=0.0, rng=1), c)


def test_sbx_offspring_mean():
    n = 100_000
    p1, p2 = np.full(n, 0.4), np.full(n, 0.6)
    c1, c2 = sbx_crossover(p1, p2, rng=7)
    kids = np.concatenate([c1, c2])
    se = kids.std(ddof=1) / math.sqrt(len(kids))
    assert abs(kids.mean() - 0.5) <= 3 * se


def test_variation_stays_in_bounds():
    rng = np.random.default_rng(2)
    P = rng.random((500, 10))
    P[:50] = 0.0
    P[50:100] = 1.0
    c1, c2 = sbx_crossover(P, P[::-1], rng=rng)
    for c in (c1, c2, poly_mutation(c1, pm=1.0, rng=rng)):
        assert np.all((c >= 0) & (c <= 1))


# --- sorting ---------------------------------------------------------------

def test_sort_fronts_layers():
    F = np.array([[0, 2], [1, 1], [2, 0], [1, 2], [2, 2], [3, 3]], dtype=float)
    fronts = [sorted(f.tolist()) for f in sort_fronts(dominance_matrix(F))]
    assert fronts == [[0, 1, 2], [3], [4], [5]]


def test_crowding_boundaries_infinite():
    F = np.array([[0, 3], [1, 2], [2, 1], [3, 0]], dtype=float)
    cd = crowding_distance(F)
    assert math.isinf(cd[0]) and math.isinf(cd[3])
    assert cd[1] == pytest.approx(cd[2])


# --- runs ------------------------------------------------------------------

def test_unknown_algorithm():
    with pytest.raises(ConfigurationError):
        config("NSGA-III")


def test_algo_params_validation():
    with pytest.raises(ConfigurationError):
        AlgoParams(delta=1.5)
    with pytest.raises(ConfigurationError):
        AlgoParams(rho=0)


def test_max_evals_equals_mu():
    rec = run(config(mu=10, evals=10))
    assert rec.evaluations == 10
    assert sorted(s.birth_eval for s in rec.final_population) == list(range(1, 11))


@pytest.mark.parametrize("alg", ALGORITHMS)
def test_every_algorithm_runs(alg):
    cfg = config(alg, mu=10, evals=350, m=3)
    rec = run(cfg)
    assert rec.evaluations == 350
    assert len(rec.final_population) == 10
    assert sorted(rec.snapshots) == [100, 200, 300]
    again = run(cfg)
    assert [s.f.tolist() for s in again.final_population] == [s.f.tolist() for s in rec.final_population]
    assert [s.f.tolist() for s in again.final_archive.members] == [s.f.tolist() for s in rec.final_archive.members]


def test_snapshots_are_exact_archives(monkeypatch):
    seen = []
    real = runner_mod.evaluate_many

    def spy(p, X):
        F = real(p, X)
        seen.extend(map(tuple, F))
        return F

    monkeypatch.setattr(runner_mod, "evaluate_many", spy)
    rec = run(config("g-NSGA-II", mu=20, evals=1000, seed=4))
    assert len(seen) == 1000
    for c, (pop, arc) in rec.snapshots.items():
        got = {tuple(s.f) for s in arc}
        F = np.array(seen[:c])
        truth = {tuple(f) for i, f in enumerate(F) if not any(dominates(g, f) for g in F)}
        assert got == truth
        assert len(arc) == len(got)
        if c < 1000:
            assert all(s.birth_eval <= c for s in pop)


def test_collapsed_objective_is_finite():
    from pbemo.algorithms.preference import r_dominance_matrix

    F = np.array([[0.1, 1e-300], [0.5, 2e-300], [0.9, 0.0]])
    with np.errstate(all="raise"):
        D = r_dominance_matrix(F, (0.6, 0.4), 0.3)
        I = pbea_indicator(F, (0.6, 0.4), 1e-4)
    assert D.dtype == bool and np.all(np.isfinite(I))
