"""Hit-and-run sampling of Boltzmann densities over a membership oracle.

One step draws a direction, intersects the body with the resulting line by
bisection on the membership oracle, and resamples the target density
restricted to that chord in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .oracles import MembershipOracle


class RngStream:
    """Counter-based random stream; substream (a, b) of a master seed.

    Walk j of any driver uses the stream (phase, j), which makes parallel
    runs bit-reproducible regardless of scheduling.
    """

    def __init__(self, master_seed: int, a: int = 0, b: int = 0):
        self._state = np.array(
            [_kernels.stream_seed(master_seed & 0xFFFFFFFFFFFFFFFF, a, b)],
            dtype=np.uint64)

    def uniform(self) -> float:
        return float(_kernels.rng_uniform(self._state))

    def normal(self) -> float:
        return float(_kernels.rng_normal(self._state))

    def normals(self, n: int) -> np.ndarray:
        return np.array([self.normal() for _ in range(n)])

    def integer(self, bound: int) -> int:
        return int(_kernels.rng_next(self._state) % np.uint64(bound))


def stream_seeds(master_seed: int, a: int, count: int) -> np.ndarray:
    """State words for the substreams (a, 0..count-1) of a master seed."""
    master_seed &= 0xFFFFFFFFFFFFFFFF
    return np.array([_kernels.stream_seed(master_seed, a, b)
                     for b in range(count)], dtype=np.uint64)


@dataclass(frozen=True)
class BoltzmannParam:
    """Direction-scaled parameter theta = -c/T of the target density e^<theta, x>."""
    theta: np.ndarray
    temperature: float

    @classmethod
    def from_objective(cls, c: np.ndarray, temperature: float) -> "BoltzmannParam":
        if temperature <= 0.0:
            raise ValueError("temperature must be positive")
        c = np.asarray(c, dtype=float)
        if math.isinf(temperature):
            return cls(np.zeros_like(c), temperature)
        return cls(-c / temperature, temperature)

    @classmethod
    def uniform(cls, n: int) -> "BoltzmannParam":
        return cls(np.zeros(n), math.inf)


@dataclass(frozen=True)
class LineSegment:
    t_minus: float
    t_plus: float

    def __post_init__(self):
        if not (self.t_minus <= 0.0 <= self.t_plus):
            raise ValueError("chord must contain the current point (t = 0)")


@dataclass(frozen=True)
class WalkConfig:
    steps: int
    chord_tol: float = 1e-8
    rng_seed: int = 0

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        if self.chord_tol <= 0.0:
            raise ValueError("chord_tol must be positive")


class IsotropicDirections:
    """Standard Gaussian directions in dimension n."""

    kind = _kernels.DIR_ISOTROPIC

    def __init__(self, n: int):
        self.n = n
        self.factor = np.zeros((0, 0))
        self.samples = np.zeros((0, 0))


class FactoredDirections:
    """N(0, LL') directions from a lower-triangular factor L."""

    kind = _kernels.DIR_FACTOR

    def __init__(self, factor: np.ndarray):
        factor = np.ascontiguousarray(factor, dtype=float)
        if np.any(np.abs(np.diag(factor)) < 1e-300):
            raise ValueError("factor is singular")
        self.n = factor.shape[0]
        self.factor = factor
        self.samples = np.zeros((0, 0))


class EmpiricalDirections:
    """Directions drawn uniformly from a fixed list of centered samples."""

    kind = _kernels.DIR_EMPIRICAL

    def __init__(self, samples: np.ndarray):
        samples = np.ascontiguousarray(samples, dtype=float)
        if samples.ndim != 2 or samples.shape[0] == 0:
            raise ValueError("need a nonempty 2-d sample array")
        if not np.any(np.abs(samples) > 0.0):
            raise ValueError("all candidate directions are zero")
        self.n = samples.shape[1]
        self.factor = np.zeros((0, 0))
        self.samples = samples


def draw_direction(src, rng: RngStream) -> np.ndarray:
    """One direction from the source; zero draws are rejected and redrawn."""
    while True:
        if src.kind == _kernels.DIR_ISOTROPIC:
            d = rng.normals(src.n)
        elif src.kind == _kernels.DIR_FACTOR:
            d = src.factor @ rng.normals(src.n)
        else:
            d = src.samples[rng.integer(src.samples.shape[0])].copy()
        if np.any(d != 0.0):
            return d


def chord(oracle: MembershipOracle, x: np.ndarray, d: np.ndarray,
          tol: float | None = None) -> LineSegment:
    """Intersection of the body with the line x + t*d, by doubling + bisection.

    The endpoints are feasible; stepping tol/||d|| further along either
    direction leaves the body.
    """
    x = np.ascontiguousarray(x, dtype=float)
    d = np.ascontiguousarray(d, dtype=float)
    if tol is None:
        tol = 1e-8 * oracle.enclosing_radius
    if not np.any(d != 0.0):
        raise ValueError("direction must be nonzero")
    if not oracle.contains(x):
        raise ValueError("chord start point is outside the body")
    kind, morder, radius, otol = oracle.kernel_args()
    pt = np.empty_like(x)
    tmin, tplus, calls = _kernels.chord_endpoints(kind, morder, radius, otol,
                                                  x, d, tol, pt)
    oracle.add_calls(int(calls))
    return LineSegment(float(tmin), float(tplus))


def sample_on_chord(s: float, seg: LineSegment, u: float) -> float:
    """Exact inverse-CDF draw from the density ~ e^{s*t} on the segment.

    Evaluated through log1p/expm1 identities; when s*(t_plus - t_minus)
    saturates the draw collapses onto the favored endpoint minus an
    exponential offset computed in log space.
    """
    if not 0.0 < u < 1.0:
        raise ValueError("u must lie strictly in (0, 1)")
    return float(_kernels.chord_draw(s, seg.t_minus, seg.t_plus, u))


def hit_and_run_walk(oracle: MembershipOracle, start: np.ndarray,
                     param: BoltzmannParam, src, cfg: WalkConfig) -> np.ndarray:
    """End point of a hit-and-run walk of cfg.steps steps from start.

    Deterministic given cfg.rng_seed; the walk runs in the compiled engine
    and its membership queries are added to the oracle's counter.
    """
    start = np.ascontiguousarray(start, dtype=float)
    if not oracle.contains(start):
        raise ValueError("walk start point is outside the body")
    x = start.copy()
    if cfg.steps == 0:
        return x
    kind, morder, radius, otol = oracle.kernel_args()
    state = np.array([_kernels.stream_seed(cfg.rng_seed & 0xFFFFFFFFFFFFFFFF,
                                           0, 0)], dtype=np.uint64)
    theta = np.ascontiguousarray(param.theta, dtype=float)
    calls = _kernels.run_walk(kind, morder, radius, otol, x, theta, src.kind,
                              src.factor, src.samples, cfg.steps,
                              cfg.chord_tol, state)
    oracle.add_calls(int(calls))
    return x


def walk_batch(oracle: MembershipOracle, start: np.ndarray,
               param: BoltzmannParam, src, steps: int, chord_tol: float,
               seeds: np.ndarray, chained: bool) -> tuple[np.ndarray, int]:
    """End points of len(seeds) walks (common start or chained) plus query count."""
    kind, morder, radius, otol = oracle.kernel_args()
    theta = np.ascontiguousarray(param.theta, dtype=float)
    start = np.ascontiguousarray(start, dtype=float)
    out, calls = _kernels.run_walks(kind, morder, radius, otol, start, theta,
                                    src.kind, src.factor, src.samples,
                                    len(seeds), steps, chord_tol,
                                    np.asarray(seeds, dtype=np.uint64),
                                    chained)
    oracle.add_calls(int(calls))
    return out, int(calls)
