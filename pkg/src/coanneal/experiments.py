"""Experiment suites: covariance/mean quality grids, optimality gaps, and
separation of the shipped instances, with deterministic CSV export."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .annealing import (COMBINED_MIN, AH_TYPE, AnnealerConfig,
                        TemperatureSchedule, anneal_heuristic, anneal_kv,
                        heuristic_params)
from .ellipsoid import ellipsoid_minimize, make_copositive_cap_separator, \
    make_dnn_separator
from .linalg import SQRT2, svec
from .oracles import MembershipOracle, copositive_cap_oracle, cube_oracle, \
    dnn_oracle
from .walk import BoltzmannParam, IsotropicDirections, RngStream, \
    stream_seeds, walk_batch

INF_SENTINEL = math.inf


@dataclass
class ExperimentTable:
    columns: tuple
    rows: list = field(default_factory=list)
    volatile: tuple = ("time",)

    def add(self, *row):
        if len(row) != len(self.columns):
            raise ValueError("row length does not match the schema")
        self.rows.append(tuple(row))

    def to_csv(self, path=None, include_timing: bool = False) -> str:
        """Render as CSV; timing columns are omitted by default so reruns
        with the same seed are byte-identical."""
        keep = [i for i, c in enumerate(self.columns)
                if include_timing or c not in self.volatile]
        lines = [",".join(self.columns[i] for i in keep)]
        for row in self.rows:
            cells = []
            for i in keep:
                v = row[i]
                if isinstance(v, float):
                    cells.append("inf" if math.isinf(v) else format(v, ".12g"))
                else:
                    cells.append(str(v))
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        return text

    def to_long_csv(self, path=None, include_timing: bool = False) -> str:
        """One (row, column, value) record per cell, for plotting tools."""
        keep = [i for i, c in enumerate(self.columns)
                if include_timing or c not in self.volatile]
        lines = ["row,column,value"]
        for r, row in enumerate(self.rows):
            for i in keep:
                v = row[i]
                if isinstance(v, float):
                    v = "inf" if math.isinf(v) else format(v, ".12g")
                lines.append(f"{r},{self.columns[i]},{v}")
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        return text


@dataclass(frozen=True)
class RandomObjective:
    seed: int
    m: int
    c: np.ndarray


def objective_from_matrix(C: np.ndarray) -> np.ndarray:
    """Unit objective direction built from a square matrix draw."""
    C = np.asarray(C, dtype=float)
    M = C + C.T + (SQRT2 - 2.0) * np.diag(np.diag(C))
    v = svec(M)
    return v / np.linalg.norm(v)


def gen_objective(m: int, seed: int) -> RandomObjective:
    """Random unit objective whose matrix entries all have variance 2."""
    if m < 2:
        raise ValueError("m must be at least 2")
    rng = np.random.default_rng(seed)
    C = rng.standard_normal((m, m))
    return RandomObjective(seed, m, objective_from_matrix(C))


def _uniform_samples(oracle: MembershipOracle, count: int, walk_len: int,
                     seed: int, cell: int) -> np.ndarray:
    """count approximately-uniform points, each from its own walk of
    walk_len steps started at the oracle's interior point."""
    src = IsotropicDirections(oracle.dim)
    seeds = stream_seeds(seed, cell, count)
    out, _ = walk_batch(oracle, oracle.interior_point,
                        BoltzmannParam.uniform(oracle.dim), src, walk_len,
                        1e-8, seeds, chained=False)
    return out


def _iid_cube_samples(n: int, count: int, seed: int, cell: int) -> np.ndarray:
    rng = RngStream(seed, cell, 0)
    return np.array([[rng.uniform() for _ in range(n)] for _ in range(count)])


def _empirical_cov(samples: np.ndarray) -> np.ndarray:
    mean = samples.mean(axis=0)
    centered = samples - mean
    return centered.T @ centered / samples.shape[0]


def spectral_relative_error(est: np.ndarray, ref: np.ndarray) -> float:
    """Spectral radius of est^{-1} ref - I; +inf when est is singular."""
    n = est.shape[0]
    try:
        M = np.linalg.solve(est, ref) - np.eye(n)
    except np.linalg.LinAlgError:
        return INF_SENTINEL
    if not np.all(np.isfinite(M)):
        return INF_SENTINEL
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def covariance_experiment(body: str, size: int, walk_lengths, sample_sizes,
                          seed: int, reference: np.ndarray | None = None,
                          ref_samples: int = 20_000,
                          ref_walk: int = 5_000) -> ExperimentTable:
    """Quality of the empirical uniform covariance across (walk length, N).

    body "cube" compares against the exact covariance I/12; walk length 0
    codes truly-i.i.d. sampling. body "dnn" compares against a long
    reference run (or a supplied reference matrix).
    """
    if body == "cube":
        oracle = cube_oracle(size)
        ref = np.eye(size) / 12.0 if reference is None else reference
    elif body == "dnn":
        oracle = dnn_oracle(size)
        if reference is None:
            ref = _empirical_cov(_uniform_samples(oracle, ref_samples,
                                                  ref_walk, seed, 0))
        else:
            ref = reference
    else:
        raise ValueError("body must be 'cube' or 'dnn'")
    table = ExperimentTable(("n", "ell", "S", "rho", "time"))
    cell = 1
    for ell in walk_lengths:
        for N in sample_sizes:
            t0 = time.perf_counter()
            if ell == 0:
                if body != "cube":
                    raise ValueError("i.i.d. baseline is cube-only")
                samples = _iid_cube_samples(size, N, seed, cell)
            else:
                samples = _uniform_samples(oracle, N, ell, seed, cell)
            rho = spectral_relative_error(_empirical_cov(samples), ref)
            table.add(size, ell, N, rho, time.perf_counter() - t0)
            cell += 1
    return table


def mean_experiment(m: int, walk_lengths, sample_sizes, seed: int,
                    ref_samples: int = 20_000,
                    ref_walk: int = 5_000) -> ExperimentTable:
    """Quality of the empirical uniform mean in the reference-whitened norm."""
    oracle = dnn_oracle(m)
    ref = _uniform_samples(oracle, ref_samples, ref_walk, seed, 0)
    x0 = ref.mean(axis=0)
    sigma0 = _empirical_cov(ref)
    table = ExperimentTable(("n", "ell", "S", "norm", "time"))
    cell = 1
    for ell in walk_lengths:
        for N in sample_sizes:
            t0 = time.perf_counter()
            samples = _uniform_samples(oracle, N, ell, seed, cell)
            d = x0 - samples.mean(axis=0)
            norm = float(math.sqrt(max(d @ np.linalg.solve(sigma0, d), 0.0)))
            table.add(m, ell, N, norm, time.perf_counter() - t0)
            cell += 1
    return table


def dnn_reference_optimum(m: int, c: np.ndarray, tol: float = 1e-6):
    """Reference optimum of the linear problem over the DNN body."""
    sep = make_dnn_separator(m)
    return ellipsoid_minimize(c, sep, R=1.0, tol=tol)


def gap_experiment(m: int, algorithm: str, walk_lengths, sample_sizes,
                   seed: int, eps_bar: float = 1e-3, p: float = 0.1,
                   alpha: float = 4.0, phases: int | None = None,
                   reference_value: float | None = None) -> ExperimentTable:
    """Final optimality gap of an annealer on a random DNN objective."""
    if algorithm not in ("alg2", "alg3"):
        raise ValueError("algorithm must be 'alg2' or 'alg3'")
    n = m * (m + 1) // 2
    c = gen_objective(m, seed).c
    if reference_value is None:
        ref = dnn_reference_optimum(m, c)
        reference_value = ref.value
    if algorithm == "alg2":
        kind = AH_TYPE
        if phases is None:
            phases = math.ceil((alpha * math.sqrt(n) - 0.5)
                               * math.log(2 * n / (p * eps_bar)) + 1)
    else:
        kind = COMBINED_MIN
    schedule = TemperatureSchedule(kind, n=n, vartheta=n, alpha=alpha, T0=1.0)
    table = ExperimentTable(("m", "ell", "S", "gap", "oracle_calls", "time"))
    for ell in walk_lengths:
        for N in sample_sizes:
            t0 = time.perf_counter()
            oracle = dnn_oracle(m)
            cfg = AnnealerConfig(c=c, oracle=oracle, schedule=schedule,
                                 epsilon_bar=eps_bar, p=p, ell=ell, N=N,
                                 seed=seed, phases=phases or 0)
            report = anneal_kv(cfg) if algorithm == "alg2" \
                else anneal_heuristic(cfg)
            gap = report.final_objective - reference_value
            table.add(m, ell, N, float(gap), report.total_oracle_calls,
                      time.perf_counter() - t0)
    return table


def separation_experiment(fixtures: dict[str, np.ndarray], method: str,
                          seed: int, eps_bar: float = 1e-3, p: float = 0.1,
                          alpha: float = 4.0,
                          ellipsoid_tol: float = 1e-4) -> ExperimentTable:
    """Normalized separation objectives over the copositive cap.

    Each instance Y yields the objective direction svec(Y)/||svec(Y)||; a
    strictly negative optimum certifies a cut separating Y from the
    completely positive matrices.
    """
    if method not in ("alg3", "ellipsoid"):
        raise ValueError("method must be 'alg3' or 'ellipsoid'")
    table = ExperimentTable(("name", "objective", "oracle_calls", "time"))
    for name, Y in fixtures.items():
        t0 = time.perf_counter()
        m = Y.shape[0]
        c = svec(Y)
        c = c / np.linalg.norm(c)
        if method == "ellipsoid":
            sep = make_copositive_cap_separator(m)
            out = ellipsoid_minimize(c, sep, R=1.0, tol=ellipsoid_tol)
            table.add(name, float(out.value), out.oracle_calls,
                      time.perf_counter() - t0)
        else:
            n = m * (m + 1) // 2
            oracle = copositive_cap_oracle(m)
            schedule = TemperatureSchedule(COMBINED_MIN, n=n, vartheta=n,
                                           alpha=alpha, T0=1.0)
            N, ell = heuristic_params(n)
            cfg = AnnealerConfig(c=c, oracle=oracle, schedule=schedule,
                                 epsilon_bar=eps_bar, p=p, ell=ell, N=N,
                                 seed=seed)
            report = anneal_heuristic(cfg)
            table.add(name, report.final_objective,
                      report.total_oracle_calls, time.perf_counter() - t0)
    return table
