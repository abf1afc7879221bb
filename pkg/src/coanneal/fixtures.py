"""Extremal doubly-nonnegative 6x6 test instances.

Ten fixed matrices ship with the package; fresh ones are generated from the
rank-3 zero-superdiagonal construction. The instance generator does not
apply any complete-positivity screening, so a generated matrix may admit a
nonnegative factorization (flagged in the instance metadata).
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

import numpy as np

from .linalg import is_psd

ORDER = 6
FIXTURE_NAMES = tuple(f"extremal_rand_{i}" for i in range(1, 11))


def load_fixtures() -> dict[str, np.ndarray]:
    """The ten shipped 6x6 instances, keyed by name, in file order."""
    text = importlib.resources.files("coanneal.data") \
        .joinpath("extremal_dnn_6x6.txt").read_text()
    out = {}
    block = []
    name = None
    for line in text.splitlines() + [""]:
        line = line.strip()
        if not line:
            if name is not None:
                out[name] = np.array(block, dtype=float)
            name, block = None, []
        elif name is None:
            name = line
        else:
            block.append([float(v) for v in line.split()])
    return out


class FixtureError(ValueError):
    """Raised when a matrix fails the extremal-instance checks."""


def validate_extremal_dnn(Y: np.ndarray, psd_tol: float = 1e-8,
                          rank_tol: float = 1e-6) -> None:
    """Check: entrywise nonnegative, PSD, rank 3, zero superdiagonal."""
    Y = np.asarray(Y, dtype=float)
    if Y.shape != (ORDER, ORDER) or not np.allclose(Y, Y.T):
        raise FixtureError("expected a symmetric 6x6 matrix")
    if Y.min() < 0.0:
        raise FixtureError("matrix has a negative entry")
    if not is_psd(Y, psd_tol):
        raise FixtureError("matrix is not positive semidefinite")
    ev = np.linalg.eigvalsh(Y)
    rank = int(np.sum(ev > rank_tol * max(ev.max(), 1.0)))
    if rank != 3:
        raise FixtureError(f"rank is {rank}, expected 3")
    sup = np.array([Y[i, i + 1] for i in range(ORDER - 1)])
    if np.any(np.abs(sup) > rank_tol):
        raise FixtureError("superdiagonal is not zero")


@dataclass(frozen=True)
class GeneratedInstance:
    matrix: np.ndarray
    attempts: int
    cp_screened: bool = False  # factorization screening deliberately omitted


class GenerationError(RuntimeError):
    pass


def gen_extremal_dnn(seed: int, max_attempts: int = 1000) -> GeneratedInstance:
    """Random rank-3 extremal instance with zero superdiagonal.

    Two spanning vectors and the leading entry of the third are signed
    Poisson(1) draws; the remaining entries of the third vector are solved
    from the zero-superdiagonal conditions. Draws that hit a zero divisor or
    fail the doubly-nonnegative checks are rejected and retried.
    """
    rng = np.random.default_rng(seed)
    for attempt in range(1, max_attempts + 1):
        v1 = rng.poisson(1.0, ORDER).astype(float)
        v2 = rng.poisson(1.0, ORDER).astype(float)
        v3 = np.zeros(ORDER)
        v3[0] = float(rng.poisson(1.0))
        signs = rng.random(2 * ORDER + 1) < 0.5
        v1[signs[:ORDER]] *= -1.0
        v2[signs[ORDER:2 * ORDER]] *= -1.0
        if signs[2 * ORDER]:
            v3[0] *= -1.0
        ok = True
        for i in range(ORDER - 1):
            if v3[i] == 0.0:
                ok = False
                break
            v3[i + 1] = -(v1[i] * v1[i + 1] + v2[i] * v2[i + 1]) / v3[i]
        if not ok:
            continue
        Y = np.outer(v1, v1) + np.outer(v2, v2) + np.outer(v3, v3)
        try:
            validate_extremal_dnn(Y)
        except FixtureError:
            continue
        return GeneratedInstance(Y, attempt)
    raise GenerationError(f"no valid instance in {max_attempts} attempts")
