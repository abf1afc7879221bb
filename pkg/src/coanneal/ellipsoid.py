"""Central-cut ellipsoid method over separation oracles.

Baseline solver for minimizing a linear function over the copositive cap or
the doubly-nonnegative body; also provides the reference optima for the gap
experiments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import matrix_order, smat, svec
from .oracles import is_copositive

FEASIBLE = "feasible"
VIOLATED = "violated"


@dataclass(frozen=True)
class SeparationResult:
    kind: str
    g: np.ndarray | None = None


def separate_copositive_cap(x: np.ndarray, tol: float = 1e-9) -> SeparationResult:
    """Separation for the unit-ball cap of the copositive cone.

    A norm violation cuts with the squared-norm gradient; a copositivity
    violation cuts with the witness outer product, which every copositive
    matrix evaluates nonnegatively.
    """
    x = np.asarray(x, dtype=float)
    matrix_order(x.shape[0])
    if x @ x > 1.0:
        return SeparationResult(VIOLATED, x.copy())
    cert = is_copositive(smat(x), tol)
    if not cert.is_copositive:
        a = cert.witness
        return SeparationResult(VIOLATED, -svec(np.outer(a, a)))
    return SeparationResult(FEASIBLE)


def make_copositive_cap_separator(m: int, tol: float = 1e-9):
    def sep(x):
        return separate_copositive_cap(x, tol)
    return sep


def make_dnn_separator(m: int, tol: float = 1e-9):
    """Separation for the doubly-nonnegative body.

    Coordinate cut for a negative entry, all-ones cut for the total-mass
    bound, eigenvector cut for a PSD violation.
    """
    n = m * (m + 1) // 2
    sum_normal = svec(np.ones((m, m)))

    def sep(x):
        x = np.asarray(x, dtype=float)
        i = int(np.argmin(x))
        if x[i] < 0.0:
            g = np.zeros(n)
            g[i] = -1.0
            return SeparationResult(VIOLATED, g)
        A = smat(x)
        if A.sum() > 1.0:
            return SeparationResult(VIOLATED, sum_normal.copy())
        ev, V = np.linalg.eigh(A)
        if ev[0] < -tol:
            v = V[:, 0]
            return SeparationResult(VIOLATED, -svec(np.outer(v, v)))
        return SeparationResult(FEASIBLE)

    return sep


def ellipsoid_update(x: np.ndarray, E: np.ndarray,
                     g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One central-cut update of the ellipsoid (x, E) for the cut <g, y - x> <= 0.

    Shrinks the volume by the fixed factor
    (n^2/(n^2-1))^(n/2) * sqrt((n-1)/(n+1)) in exact arithmetic.
    """
    n = x.shape[0]
    Eg = E @ g
    gEg = float(g @ Eg)
    if gEg <= 0.0:
        raise ValueError("cut direction has nonpositive ellipsoidal norm")
    b = Eg / np.sqrt(gEg)
    x_new = x - b / (n + 1)
    E_new = (n * n / (n * n - 1.0)) * (E - (2.0 / (n + 1)) * np.outer(b, b))
    return x_new, E_new


@dataclass
class EllipsoidOutcome:
    point: np.ndarray | None
    value: float
    oracle_calls: int
    iterations: int
    certified_gap: float
    trace: list = field(default_factory=list)


def ellipsoid_minimize(c: np.ndarray, separator, R: float, tol: float = 1e-4,
                       max_iters: int = 200_000,
                       keep_trace: bool = False) -> EllipsoidOutcome:
    """Minimize <c, x> over a body inside the origin-centered radius-R ball.

    Standard central-cut iteration: feasibility cut from the separator when
    the center is infeasible, objective cut otherwise. Stops once the
    objective-gap bound sqrt(c'Ec) drops to tol and a feasible point has been
    recorded; returns the best feasible point found.
    """
    c = np.asarray(c, dtype=float)
    n = c.shape[0]
    x = np.zeros(n)
    E = R * R * np.eye(n)
    best_x = None
    best_val = np.inf
    calls = 0
    it = 0
    repair_every = 50 * n
    trace = []
    gap = np.sqrt(max(c @ E @ c, 0.0))
    while it < max_iters:
        res = separator(x)
        calls += 1
        if res.kind == FEASIBLE:
            val = float(c @ x)
            if val < best_val:
                best_val = val
                best_x = x.copy()
            g = c
            cut = "objective"
        else:
            g = res.g
            cut = "feasibility"
        if keep_trace:
            trace.append((it, cut, best_val if best_x is not None else np.nan))
        try:
            x, E = ellipsoid_update(x, E, g)
        except ValueError:
            # numerical PSD loss; repair and retry once
            E = _psd_repair(E)
            try:
                x, E = ellipsoid_update(x, E, g)
            except ValueError:
                break
        it += 1
        if it % repair_every == 0:
            E = _psd_repair(E)
        gap = np.sqrt(max(c @ E @ c, 0.0))
        if gap <= tol and best_x is not None:
            break
    return EllipsoidOutcome(best_x, best_val, calls, it, float(gap), trace)


def _psd_repair(E: np.ndarray) -> np.ndarray:
    E = 0.5 * (E + E.T)
    ev, V = np.linalg.eigh(E)
    floor = max(ev.max(), 1e-300) * 1e-14
    ev = np.clip(ev, floor, None)
    return (V * ev) @ V.T
