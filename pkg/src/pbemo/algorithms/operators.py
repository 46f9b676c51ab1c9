"""Real-coded variation on the unit box: SBX, polynomial mutation, tournaments."""
from __future__ import annotations

import numpy as np

ETA_C = 20.0
ETA_M = 20.0


def sbx_crossover(p1, p2, eta_c: float = ETA_C, rng=None) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover with bounds [0, 1] (crossover probability 1).

    Each variable is recombined with probability 0.5 and the two children swap
    that variable with probability 0.5. Works elementwise, so rows of two
    parent matrices are crossed pairwise. Always draws three uniforms per
    variable so the generator advances identically whatever the parents are.
    """
    rng = np.random.default_rng(rng)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    shape = p1.shape
    do, u, swap = rng.random(shape), rng.random(shape), rng.random(shape)
    c1, c2 = p1.copy(), p2.copy()

    y1 = np.minimum(p1, p2)
    y2 = np.maximum(p1, p2)
    gap = y2 - y1
    active = (do < 0.5) & (gap > 1e-14)
    if not np.any(active):
        return c1, c2
    y1, y2, gap, u = y1[active], y2[active], gap[active], u[active]
    expo = eta_c + 1.0

    def betaq(beta):
        alpha = 2.0 - beta ** (-expo)
        return np.where(
            u <= 1.0 / alpha,
            (u * alpha) ** (1.0 / expo),
            (1.0 / (2.0 - u * alpha)) ** (1.0 / expo),
        )

    lo = 0.5 * ((y1 + y2) - betaq(1.0 + 2.0 * y1 / gap) * gap)
    hi = 0.5 * ((y1 + y2) + betaq(1.0 + 2.0 * (1.0 - y2) / gap) * gap)
    lo = np.clip(lo, 0.0, 1.0)
    hi = np.clip(hi, 0.0, 1.0)
    s = swap[active] < 0.5
    c1[active] = np.where(s, hi, lo)
    c2[active] = np.where(s, lo, hi)
    return c1, c2


def poly_mutation(c, eta_m: float = ETA_M, pm: float | None = None, rng=None) -> np.ndarray:
    """Polynomial mutation with bounds [0, 1]; ``pm`` defaults to 1/n.

    Accepts one vector or a matrix of row vectors.
    """
    rng = np.random.default_rng(rng)
    y = np.asarray(c, dtype=float).copy()
    if pm is None:
        pm = 1.0 / y.shape[-1]
    do, r = rng.random(y.shape), rng.random(y.shape)
    mask = do < pm
    if not np.any(mask):
        return y
    yv, r = y[mask], r[mask]
    mut_pow = 1.0 / (eta_m + 1.0)
    d1, d2 = yv, 1.0 - yv
    low = r < 0.5
    val_lo = 2.0 * r + (1.0 - 2.0 * r) * (1.0 - d1) ** (eta_m + 1.0)
    val_hi = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * (1.0 - d2) ** (eta_m + 1.0)
    deltaq = np.where(low, val_lo ** mut_pow - 1.0, 1.0 - val_hi ** mut_pow)
    y[mask] = np.clip(yv + deltaq, 0.0, 1.0)
    return y


def binary_tournament(n: int, rng: np.random.Generator, size=None):
    """Pick two population slots at random; the lower index (better rank) wins."""
    if size is None:
        a, b = rng.integers(n, size=2)
        return int(min(a, b))
    return rng.integers(n, size=(2,) + tuple(np.atleast_1d(size))).min(axis=0)


def make_offspring(X: np.ndarray, count: int, rng_sel, rng_var, eta_c=ETA_C, eta_m=ETA_M, pm=None) -> np.ndarray:
    """``count`` children from a rank-ordered parent matrix (row 0 best)."""
    pairs = (count + 1) // 2
    mates = binary_tournament(len(X), rng_sel, size=(pairs, 2))
    c1, c2 = sbx_crossover(X[mates[:, 0]], X[mates[:, 1]], eta_c, rng_var)
    kids = np.empty((2 * pairs, X.shape[1]))
    kids[0::2], kids[1::2] = c1, c2
    return poly_mutation(kids, eta_m, pm, rng_var)[:count]
