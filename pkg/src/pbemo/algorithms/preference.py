"""Reference-point preference models used by the algorithms.

* R-NSGA-II ranks each non-dominated front by Euclidean distance to ``z`` and
  demotes near-duplicates (epsilon clearing).
* r-NSGA-II replaces Pareto dominance by r-dominance.
* g-NSGA-II replaces it by g-dominance.
* PBEA runs IBEA selection with an ASF-weighted epsilon indicator.
* The decomposition algorithm minimises the augmented ASF per weight vector.
"""
from __future__ import annotations

from math import comb

import numpy as np

from pbemo.core import _pair, dominance_matrix, objectives
from pbemo.algorithms.sorting import crowded_order, sort_fronts


def asf(f, z, w, rho: float = 1e-4) -> float:
    """Augmented achievement scalarizing function max_i w_i(f_i - z_i) + rho * sum_i w_i(f_i - z_i)."""
    f, z = _pair(f, z)
    t = np.asarray(w, dtype=float) * (f - z)
    return float(t.max() + rho * t.sum())


def asf_many(F: np.ndarray, z, w, rho: float) -> np.ndarray:
    t = np.asarray(w, dtype=float) * (F - np.asarray(z, dtype=float))
    return t.max(axis=-1) + rho * t.sum(axis=-1)


def _span(F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Population lower corner and per-objective range; near-zero ranges count as 1."""
    lo, hi = F.min(axis=0), F.max(axis=0)
    return lo, np.where(hi - lo > 1e-12, hi - lo, 1.0)


# --- R-NSGA-II -------------------------------------------------------------

def preference_order(F: np.ndarray, z, epsilon: float) -> np.ndarray:
    """Order one front: epsilon-cleared representatives by distance to ``z``, then the cleared rest."""
    d = np.sqrt(np.sum((F - np.asarray(z)) ** 2, axis=1))
    order = np.argsort(d, kind="stable")
    cleared = np.zeros(len(F), dtype=bool)
    reps = []
    if epsilon > 0:
        close = np.sqrt(np.sum((F[:, None, :] - F[None, :, :]) ** 2, axis=2)) < epsilon
        np.fill_diagonal(close, False)
    for i in order:
        if cleared[i]:
            continue
        reps.append(i)
        if epsilon > 0:
            cleared |= close[i]
    rest = [i for i in order if cleared[i]]
    return np.asarray(reps + rest, dtype=np.int64)


def rnsga2_order(F: np.ndarray, z, epsilon: float) -> np.ndarray:
    out = []
    for front in sort_fronts(dominance_matrix(F)):
        out.extend(front[preference_order(F[front], z, epsilon)])
    return np.asarray(out, dtype=np.int64)


def rnsga2_survival(solutions, mu: int, z, epsilon_clear: float):
    """Keep ``mu`` solutions: non-dominated sorting, then distance to ``z`` with epsilon clearing."""
    solutions = list(solutions)
    order = rnsga2_order(objectives(solutions), z, epsilon_clear)
    return [solutions[i] for i in order[:mu]]


# --- r-NSGA-II -------------------------------------------------------------

def _r_distance(F: np.ndarray, z) -> tuple[np.ndarray, float]:
    """Weighted normalised distance to ``z`` and the population spread of that distance."""
    _, span = _span(F)
    m = F.shape[1]
    dist = np.sqrt(np.sum(((F - np.asarray(z)) / span) ** 2 / m, axis=1))
    spread = dist.max() - dist.min()
    return dist, spread


def r_dominance_matrix(F: np.ndarray, z, delta: float) -> np.ndarray:
    F = np.asarray(F, dtype=float)
    dom = dominance_matrix(F)
    dist, spread = _r_distance(F, z)
    if spread > 0:
        D = (dist[:, None] - dist[None, :]) / spread
    else:
        D = np.zeros((len(F), len(F)))
    incomparable = ~dom & ~dom.T
    return dom | (incomparable & (D < -delta))


def r_dominates(a, b, z, delta: float, population_context) -> bool:
    """r-dominance of ``a`` over ``b``; distances are normalised over ``population_context``."""
    a, b = _pair(a, b)
    C = np.vstack([np.atleast_2d(np.asarray(population_context, dtype=float)), a, b])
    dom = bool(np.all(a <= b) and np.any(a < b))
    if dom:
        return True
    if bool(np.all(b <= a) and np.any(b < a)):
        return False
    dist, spread = _r_distance(C, z)
    if spread == 0:
        return False
    return bool((dist[-2] - dist[-1]) / spread < -delta)


# --- g-NSGA-II -------------------------------------------------------------

def g_flag(f, z) -> int:
    """1 if ``f`` weakly dominates ``z`` or is weakly dominated by it, else 0."""
    f, z = _pair(f, z)
    return int(bool(np.all(f <= z) or np.all(z <= f)))


def g_dominance_matrix(F: np.ndarray, z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    flag = np.all(F <= z, axis=1) | np.all(F >= z, axis=1)
    dom = dominance_matrix(F)
    same = flag[:, None] == flag[None, :]
    return (flag[:, None] & ~flag[None, :]) | (same & dom)


# --- PBEA ------------------------------------------------------------------

S_MIN = 0.1


def pbea_indicator(F: np.ndarray, z, rho: float, s_min: float = S_MIN) -> np.ndarray:
    """``I[a, b] = eps+(a, b) / max(s_norm(b), s_min)`` on population-normalised objectives.

    ``eps+(a, b) = max_i (f_i(a) - f_i(b))`` and ``s_norm`` is the ASF value
    (unit weights) shifted to 0 at the population minimum and scaled to [0, 1].
    """
    lo, span = _span(F)
    Fn = (F - lo) / span
    zn = (np.asarray(z, dtype=float) - lo) / span
    eps = np.max(Fn[:, None, :] - Fn[None, :, :], axis=2)
    s = asf_many(Fn, zn, np.ones(F.shape[1]), rho)
    s_span = s.max() - s.min()
    s_norm = (s - s.min()) / s_span if s_span > 0 else np.zeros_like(s)
    return eps / np.maximum(s_norm, s_min)[None, :]


def pbea_fitness_from(I: np.ndarray, kappa: float) -> tuple[np.ndarray, float]:
    """IBEA fitness ``F(a) = sum_{b != a} -exp(-I[b, a] / (c * kappa))`` with c = max |I|."""
    c = float(np.abs(I).max())
    if c == 0:
        c = 1.0
    E = np.exp(-I / (c * kappa))
    np.fill_diagonal(E, 0.0)
    return -E.sum(axis=0), c


def pbea_fitness(pop, z, rho: float = 1e-4, kappa: float = 0.05, s_min: float = S_MIN) -> dict:
    """Fitness of every solution keyed by position in ``pop``."""
    pop = list(pop)
    if len(pop) < 2:
        raise ValueError("pbea_fitness needs at least two solutions")
    fit, _ = pbea_fitness_from(pbea_indicator(objectives(pop), z, rho, s_min), kappa)
    return {i: float(v) for i, v in enumerate(fit)}


def pbea_order(F: np.ndarray, mu: int, z, rho: float, kappa: float, s_min: float = S_MIN) -> np.ndarray:
    """Indices of the ``mu`` survivors, best fitness first.

    Removes the worst individual one at a time and updates the others' fitness.
    """
    I = pbea_indicator(F, z, rho, s_min)
    fit, c = pbea_fitness_from(I, kappa)
    alive = np.ones(len(F), dtype=bool)
    for _ in range(len(F) - mu):
        cand = np.flatnonzero(alive)
        worst = cand[np.argmin(fit[cand])]
        alive[worst] = False
        fit += np.exp(-I[worst] / (c * kappa))
    keep = np.flatnonzero(alive)
    return keep[np.argsort(-fit[keep], kind="stable")]


# --- decomposition ---------------------------------------------------------

def simplex_lattice(m: int, H: int) -> np.ndarray:
    """All points of the simplex with coordinates in {0, 1/H, ..., 1}."""
    out = []

    def rec(prefix, left, dims):
        if dims == 1:
            out.append(prefix + [left])
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v, dims - 1)

    rec([], H, m)
    return np.asarray(out, dtype=float) / H


def _farthest_points(P: np.ndarray, count: int) -> np.ndarray:
    chosen = [0]
    d = np.linalg.norm(P - P[0], axis=1)
    while len(chosen) < count:
        i = int(np.argmax(d))
        chosen.append(i)
        d = np.minimum(d, np.linalg.norm(P - P[i], axis=1))
    return P[np.sort(chosen)]


def biased_weights(m: int, mu: int, shrink: float = 0.5) -> np.ndarray:
    """``mu`` weight vectors pulled toward the equal-weight direction.

    Uniform simplex points (an exact lattice when one has ``mu`` points,
    otherwise farthest-point thinning of a dense lattice) are mapped by
    ``w -> c + shrink * (w - c)`` with c = (1/m, ..., 1/m). With a
    multiplicative ASF around ``z`` the equal-weight vector targets the front
    along the diagonal through ``z``, so the weights concentrate near it.
    """
    if mu < 2:
        raise ValueError("the decomposition algorithm needs mu >= 2")
    H = 1
    while comb(H + m - 1, m - 1) < mu:
        H += 1
    if comb(H + m - 1, m - 1) == mu:
        W = simplex_lattice(m, H)
    else:
        while comb(H + m - 1, m - 1) < 10 * mu and comb(H + 1 + m - 1, m - 1) <= 20_000:
            H += 1
        W = _farthest_points(simplex_lattice(m, H), mu)
    c = np.full(m, 1.0 / m)
    return c + shrink * (W - c)
