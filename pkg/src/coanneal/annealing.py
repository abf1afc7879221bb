"""Temperature schedules, parameter calculators, and the two annealers.

The faithful annealer re-estimates a sampling covariance every phase and
draws Gaussian directions from it; the heuristic annealer chains walks and
recycles the previous phase's centered samples as directions. Theoretical
walk lengths contain a 10^30 constant and are evaluated in arbitrary
precision as pure calculators, never executed.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from .oracles import MembershipOracle
from .walk import (BoltzmannParam, EmpiricalDirections, FactoredDirections,
                   IsotropicDirections, stream_seeds, walk_batch)

KALAI_VEMPALA = "kalai_vempala"
AH_TYPE = "ah_type"
COMBINED_MIN = "combined_min"


@dataclass(frozen=True)
class TemperatureSchedule:
    kind: str
    n: int
    vartheta: float
    alpha: float = 4.0
    T0: float = 1.0

    def __post_init__(self):
        if self.kind not in (KALAI_VEMPALA, AH_TYPE, COMBINED_MIN):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.T0 <= 0.0 or self.vartheta <= 0.0 or self.n < 1:
            raise ValueError("T0, vartheta, n must be positive")
        if self.kind != KALAI_VEMPALA and \
                self.alpha <= 1.0 + 1.0 / math.sqrt(self.vartheta):
            raise ValueError("alpha must exceed 1 + 1/sqrt(vartheta)")


def next_temperature(schedule: TemperatureSchedule, k: int) -> float:
    """Temperature of phase k (k >= 1, T_1 = T0)."""
    if k < 1:
        raise ValueError("phase index must be >= 1")
    kv = 1.0 - 1.0 / math.sqrt(schedule.n)
    ah = 1.0 - 1.0 / (schedule.alpha * math.sqrt(schedule.vartheta))
    if schedule.kind == KALAI_VEMPALA:
        base = kv
    elif schedule.kind == AH_TYPE:
        base = ah
    else:
        base = min(kv, ah)
    return schedule.T0 * base ** (k - 1)


def theoretical_walk_length_general(n: int, eps: float, q, dtheta, dtheta0) -> int:
    """Mixing walk length in terms of the parameter increments, exactly.

    Returns the ceiling as an arbitrary-precision integer; q may be an
    mpmath scalar since it typically underflows double precision.
    """
    if not (0 < q < 1):
        raise ValueError("q must lie in (0, 1)")
    if eps < 0.0:
        raise ValueError("eps must be nonnegative")
    with mp.workdps(120):
        q = mp.mpf(q)
        dt = mp.mpf(dtheta)
        dt0 = mp.mpf(dtheta0)
        if not (0 <= dt < 1 and 0 <= dt0 < 1):
            raise ValueError("parameter increments must lie in [0, 1)")
        front = 16384 * mp.e ** 2 * mp.mpf(10) ** 30 * n ** 3 * (1 + eps) ** 2 \
            / ((1 - dt) ** 4 * mp.exp(4 * dt))
        log2arg = 256 * mp.exp(-2 * dt0) * n * mp.sqrt(n) * (1 + eps) \
            / ((1 - dt0) ** 2 * (1 - dt) ** 2 * mp.exp(2 * dt) * q ** 2)
        log3arg = 2 * mp.exp(-2 * dt0) / ((1 - dt0) ** 2 * q ** 2)
        val = front * mp.log(log2arg) ** 2 * mp.log(log3arg) ** 3
        return int(mp.ceil(val))


def theoretical_walk_length(n: int, eps: float, q, alpha: float,
                            vartheta: float) -> int:
    """Walk length for one annealing temperature update, exactly."""
    if alpha <= 1.0 + 1.0 / math.sqrt(vartheta):
        raise ValueError("alpha must exceed 1 + 1/sqrt(vartheta)")
    with mp.workdps(120):
        rt = mp.sqrt(vartheta)
        dt = rt / (alpha * rt - 1)
        return theoretical_walk_length_general(n, eps, q, dt, dt)


@dataclass(frozen=True)
class TheoreticalParams:
    m: int
    N: int
    q: object  # mpmath scalar; typically underflows float64
    ell: int


def theoretical_params(n: int, R: float, r: float, eps_bar: float, p: float,
                       alpha: float, vartheta: float) -> TheoreticalParams:
    """Phase count, sample size, mixing budget, and walk length, exactly."""
    if not (0.0 < eps_bar <= 2.0 * R):
        raise ValueError("eps_bar must lie in (0, 2R]")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    if r <= 0.0:
        raise ValueError("r must be positive")
    with mp.workdps(120):
        rt = mp.sqrt(vartheta)
        m = int(mp.ceil((alpha * rt - mp.mpf(1) / 2)
                        * mp.log(2 * n * R / (p * eps_bar)) + 1))
        N = int(mp.ceil(mp.mpf(1000) * n ** 2 * m / p))
        q = (mp.mpf(p) / (102000 * m * n ** 2 * mp.mpf(R) ** 4)) \
            * (mp.mpf(1) / 4096) \
            * (mp.mpf(r) / (n + 1)) ** 4 \
            * (mp.mpf(p) * eps_bar / (8 * R * n)) ** (8 * rt + 4)
        ell = theoretical_walk_length(n, 1.0, q, alpha, vartheta)
    return TheoreticalParams(m, N, q, ell)


def heuristic_params(n: int) -> tuple[int, int]:
    """Sample size and walk length that empirically suffice for convergence."""
    if n < 1:
        raise ValueError("n must be positive")
    v = math.ceil(n * math.sqrt(n))
    return v, v


@dataclass
class AnnealerConfig:
    c: np.ndarray
    oracle: MembershipOracle
    schedule: TemperatureSchedule
    epsilon_bar: float = 1e-3
    p: float = 0.1
    ell: int = 0
    N: int = 0
    seed: int = 0
    phases: int = 0            # faithful annealer only
    burn_in_steps: int = 0     # 0 -> 10 * dim
    chord_tol: float = 1e-8
    inner_radius: float | None = None  # enables theoretical-parameter report

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        nc = float(np.linalg.norm(self.c))
        if abs(nc - 1.0) > 1e-10:
            raise ValueError("objective direction must be a unit vector")
        if self.c.shape != (self.oracle.dim,):
            raise ValueError("objective dimension does not match the oracle")
        if not 0.0 < self.p < 1.0:
            raise ValueError("p must lie in (0, 1)")
        if not 0.0 < self.epsilon_bar <= 2.0 * self.oracle.enclosing_radius:
            raise ValueError("epsilon_bar must lie in (0, 2R]")
        if self.ell <= 0 or self.N <= 0:
            self.N, self.ell = heuristic_params(self.oracle.dim)
        if self.burn_in_steps <= 0:
            self.burn_in_steps = 10 * self.oracle.dim


@dataclass
class PhaseRecord:
    k: int
    temperature: float
    mean: np.ndarray
    mean_objective: float
    oracle_calls: int
    seconds: float
    direction_mode: str


@dataclass
class RunReport:
    algorithm: str
    final_point: np.ndarray
    final_objective: float
    phases: list[PhaseRecord]
    burn_in_calls: int
    total_oracle_calls: int
    wall_seconds: float
    warnings: list[str] = field(default_factory=list)
    theoretical: dict | None = None

    def phase_rows(self):
        """CSV-ready rows (k, temperature, mean objective, oracle calls)."""
        return [(r.k, r.temperature, r.mean_objective, r.oracle_calls)
                for r in self.phases]

    def to_json(self) -> str:
        return json.dumps({
            "algorithm": self.algorithm,
            "final_point": self.final_point.tolist(),
            "final_objective": self.final_objective,
            "phases": [{
                "k": r.k,
                "temperature": r.temperature,
                "mean": r.mean.tolist(),
                "mean_objective": r.mean_objective,
                "oracle_calls": r.oracle_calls,
                "direction_mode": r.direction_mode,
            } for r in self.phases],
            "burn_in_calls": self.burn_in_calls,
            "total_oracle_calls": self.total_oracle_calls,
            "warnings": self.warnings,
            "theoretical": self.theoretical,
        }, indent=2)


def _theoretical_summary(cfg: AnnealerConfig) -> dict | None:
    if cfg.inner_radius is None:
        return None
    sched = cfg.schedule
    tp = theoretical_params(cfg.oracle.dim, cfg.oracle.enclosing_radius,
                            cfg.inner_radius, cfg.epsilon_bar, cfg.p,
                            sched.alpha, sched.vartheta)
    return {"m": tp.m, "N": tp.N, "q": mp.nstr(mp.mpf(tp.q), 8),
            "ell_digits": len(str(tp.ell))}


def _burn_in(cfg: AnnealerConfig, count: int) -> tuple[np.ndarray, int]:
    """Near-uniform starting samples via chained isotropic walks.

    Stand-in for drawing from the exact uniform distribution, which a
    membership oracle alone cannot provide; flagged in the report.
    """
    src = IsotropicDirections(cfg.oracle.dim)
    seeds = stream_seeds(cfg.seed, 0, count)
    return walk_batch(cfg.oracle, cfg.oracle.interior_point,
                      BoltzmannParam.uniform(cfg.oracle.dim), src,
                      cfg.burn_in_steps, cfg.chord_tol, seeds, chained=True)


def _empirical_cov(samples: np.ndarray) -> np.ndarray:
    mean = samples.mean(axis=0)
    centered = samples - mean
    return centered.T @ centered / samples.shape[0]


def anneal_kv(cfg: AnnealerConfig) -> RunReport:
    """Faithful annealer: per-phase covariance re-estimation.

    Phase k cools the temperature one schedule step, moves the iterate by one
    walk, draws N walks from the common start for the covariance update, and
    factors that covariance for the next phase's Gaussian directions. Falls
    back to empirical directions permanently if a factorization fails.
    """
    t0 = time.perf_counter()
    warnings = ["initial uniform samples approximated by interior-point burn-in"]
    n = cfg.oracle.dim
    start_calls = cfg.oracle.call_count
    burn, burn_calls = _burn_in(cfg, max(cfg.N, n + 2))
    x = burn[-1].copy()
    sigma = _empirical_cov(burn)
    prev_samples = burn
    use_empirical = False
    records = []
    for k in range(1, cfg.phases + 1):
        pt0 = time.perf_counter()
        # the faithful annealer cools once before its first sampling phase,
        # so phase k runs one schedule step below T_k
        T_k = next_temperature(cfg.schedule, k + 1)
        param = BoltzmannParam.from_objective(cfg.c, T_k)
        mode = "factored"
        src = None
        if not use_empirical:
            try:
                L = np.linalg.cholesky(sigma)
                src = FactoredDirections(L)
            except np.linalg.LinAlgError:
                use_empirical = True
                warnings.append(
                    f"phase {k}: singular covariance, switched to empirical "
                    "directions")
        if use_empirical:
            mode = "empirical"
            centered = prev_samples - prev_samples.mean(axis=0)
            src = EmpiricalDirections(centered)
        move_seed = stream_seeds(cfg.seed, k, 1)
        xs, calls_move = walk_batch(cfg.oracle, x, param, src, cfg.ell,
                                    cfg.chord_tol, move_seed, chained=False)
        seeds = stream_seeds(cfg.seed, k, cfg.N + 1)[1:]
        ys, calls_cov = walk_batch(cfg.oracle, x, param, src, cfg.ell,
                                   cfg.chord_tol, seeds, chained=False)
        x = xs[0]
        sigma = _empirical_cov(ys)
        prev_samples = ys
        mean = ys.mean(axis=0)
        records.append(PhaseRecord(
            k=k, temperature=T_k, mean=mean,
            mean_objective=float(cfg.c @ mean),
            oracle_calls=calls_move + calls_cov,
            seconds=time.perf_counter() - pt0,
            direction_mode=mode))
    return RunReport(
        algorithm="anneal_kv",
        final_point=x,
        final_objective=float(cfg.c @ x),
        phases=records,
        burn_in_calls=burn_calls,
        total_oracle_calls=cfg.oracle.call_count - start_calls,
        wall_seconds=time.perf_counter() - t0,
        warnings=warnings,
        theoretical=_theoretical_summary(cfg))


def anneal_heuristic(cfg: AnnealerConfig) -> RunReport:
    """Accelerated annealer: chained walks, sample-set directions, mean output.

    Phase k starts from the previous phase's sample mean, chains the N walks,
    and draws directions uniformly from the previous phase's centered
    samples. Cooling takes the faster of the two schedule branches; the loop
    stops once n * T_{k-1} <= epsilon_bar * p and the last mean is returned.
    """
    t0 = time.perf_counter()
    warnings = ["initial uniform samples approximated by interior-point burn-in"]
    n = cfg.oracle.dim
    start_calls = cfg.oracle.call_count
    samples, burn_calls = _burn_in(cfg, cfg.N)
    x = samples.mean(axis=0)
    records = []
    T_prev = math.inf
    k = 1
    while n * T_prev > cfg.epsilon_bar * cfg.p:
        pt0 = time.perf_counter()
        T_k = next_temperature(cfg.schedule, k)
        param = BoltzmannParam.from_objective(cfg.c, T_k)
        centered = samples - x
        if not np.any(np.abs(centered) > 0.0):
            warnings.append(f"phase {k}: degenerate sample set, isotropic "
                            "directions substituted")
            src = IsotropicDirections(n)
        else:
            src = EmpiricalDirections(centered)
        seeds = stream_seeds(cfg.seed, k, cfg.N)
        samples, calls = walk_batch(cfg.oracle, x, param, src, cfg.ell,
                                    cfg.chord_tol, seeds, chained=True)
        x = samples.mean(axis=0)
        records.append(PhaseRecord(
            k=k, temperature=T_k, mean=x,
            mean_objective=float(cfg.c @ x),
            oracle_calls=calls,
            seconds=time.perf_counter() - pt0,
            direction_mode="empirical"))
        T_prev = T_k
        k += 1
    return RunReport(
        algorithm="anneal_heuristic",
        final_point=x,
        final_objective=float(cfg.c @ x),
        phases=records,
        burn_in_calls=burn_calls,
        total_oracle_calls=cfg.oracle.call_count - start_calls,
        wall_seconds=time.perf_counter() - t0,
        warnings=warnings,
        theoretical=_theoretical_summary(cfg))


def heuristic_phase_count(schedule: TemperatureSchedule, n: int,
                          eps_bar: float, p: float) -> int:
    """Number of phases the accelerated annealer will execute."""
    k = 1
    T_prev = math.inf
    while n * T_prev > eps_bar * p:
        T_prev = next_temperature(schedule, k)
        k += 1
    return k - 1
