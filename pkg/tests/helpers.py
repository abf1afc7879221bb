"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written from the definitions, without reusing
package internals, so agreement is evidence of correctness.
"""

import itertools
import math

import numpy as np


def simplex_grid_min(A, coarse=60, keep=40, rounds=12, box_div=12):
    """Brute-force minimum of a'Aa over the standard simplex.

    Full grid with denominator `coarse`, then multi-scale box refinement
    around the best `keep` coarse candidates. Pure grid search; no
    stationarity reasoning.
    """
    A = np.asarray(A, dtype=float)
    m = A.shape[0]
    pts = []
    for bars in itertools.combinations(range(coarse + m - 1), m - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(coarse + m - 2 - prev)
        pts.append(comp)
    pts = np.array(pts, dtype=float) / coarse
    vals = np.einsum("ij,jk,ik->i", pts, A, pts)
    order = np.argsort(vals)[:keep]
    best_val = float(vals[order[0]])
    best_x = pts[order[0]]
    lin = np.linspace(-1.0, 1.0, 2 * box_div + 1)
    for start in order:
        x = pts[start].copy()
        w = 1.0 / coarse
        for _ in range(rounds):
            grids = [x[i] + w * lin for i in range(m - 1)]
            cand = np.array(list(itertools.product(*grids)))
            last = 1.0 - cand.sum(axis=1)
            cand = np.hstack([cand, last[:, None]])
            cand = cand[(cand >= 0.0).all(axis=1)]
            if cand.shape[0] == 0:
                break
            v = np.einsum("ij,jk,ik->i", cand, A, cand)
            j = int(np.argmin(v))
            x = cand[j]
            if v[j] < best_val:
                best_val = float(v[j])
                best_x = x.copy()
            w /= 2.0
    return best_val, best_x


def chord_cdf(s, t_minus, t_plus, t):
    """CDF at t of the density proportional to exp(s*u) on [t_minus, t_plus]."""
    if t <= t_minus:
        return 0.0
    if t >= t_plus:
        return 1.0
    if s == 0.0:
        return (t - t_minus) / (t_plus - t_minus)
    num = math.expm1(s * (t - t_minus))
    den = math.expm1(s * (t_plus - t_minus))
    return num / den


def trace_inner(A, B):
    """Trace inner product by explicit double sum."""
    m = A.shape[0]
    acc = 0.0
    for i in range(m):
        for j in range(m):
            acc += A[i, j] * B[i, j]
    return acc


def random_symmetric(rng, m, scale=1.0):
    C = rng.standard_normal((m, m))
    return scale * (C + C.T) / 2.0
