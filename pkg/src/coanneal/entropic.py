"""Barrier complexity estimate for the Euclidean ball by 1-d quadrature.

The directional variance of the exponential-family distribution on the unit
ball reduces to ratios of one-dimensional integrals; its supremum over the
parameter norm estimates the barrier complexity parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate


class QuadratureError(RuntimeError):
    """Raised when the adaptive quadrature fails to reach tolerance."""


def _ratio_integrals(n: int, s: float, f) -> float:
    """E[f(s*y)] under the density ~ (1-y^2)^((n-1)/2) * exp(s*y) on [-1, 1].

    The weight is normalized by exp(-s) so the integrands stay <= 1 in
    magnitude for any s.
    """
    half = 0.5 * (n - 1)

    # integrate in u = 1 - y so the mass concentrating at y = 1 for large s
    # sits at the left endpoint; breakpoints mark the decay scale of the peak
    def weight(u):
        return (u * (2.0 - u)) ** half * np.exp(-s * u)

    pts = sorted({min(2.0 * k / max(s, 1.0), 1.9) for k in (1.0, 5.0, 25.0)})
    # absolute tolerance 0: the integrals shrink like s^-(n+1)/2, so only
    # relative accuracy is meaningful
    num, nerr = integrate.quad(lambda u: f(s * (1.0 - u)) * weight(u),
                               0.0, 2.0, epsabs=0.0, epsrel=1e-11,
                               limit=800, points=pts)
    den, derr = integrate.quad(weight, 0.0, 2.0, epsabs=0.0, epsrel=1e-11,
                               limit=800, points=pts)
    if den <= 0.0 or nerr > 1e-8 * max(abs(num), den) + 1e-300 \
            or derr > 1e-8 * den:
        raise QuadratureError(f"quadrature did not converge (n={n}, s={s})")
    return num / den


def ball_moment(n: int, s: float, power: int) -> float:
    """First or second moment of <theta, X> on the unit ball, ||theta|| = s."""
    if n < 1:
        raise ValueError("n must be positive")
    if s < 0.0:
        raise ValueError("s must be nonnegative")
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    if power == 1:
        return _ratio_integrals(n, s, lambda t: t)
    return _ratio_integrals(n, s, lambda t: t * t)


def theta_quadratic_form(n: int, s: float) -> float:
    """Directional variance of <theta, X>, i.e. second moment minus mean^2.

    Computed in two passes about the mean to avoid cancellation at large s.
    """
    if s == 0.0:
        return 0.0
    mu = ball_moment(n, s, 1)
    return _ratio_integrals(n, s, lambda t: (t - mu) ** 2)


@dataclass(frozen=True)
class ThetaProfile:
    n: int
    grid: np.ndarray
    values: np.ndarray
    sup_estimate: float

    def rows(self):
        return [(self.n, float(s), float(v))
                for s, v in zip(self.grid, self.values)]


def theta_profile(n: int, s_max: float = 1e3, grid_size: int = 200,
                  s_min: float = 1e-2) -> ThetaProfile:
    """Directional-variance curve on a log grid with its supremum estimate."""
    if s_max < 0.0:
        raise ValueError("s_max must be nonnegative")
    if s_max == 0.0:
        grid = np.zeros(max(grid_size, 1))
    elif grid_size == 1:
        grid = np.array([s_max])
    else:
        grid = np.logspace(np.log10(s_min), np.log10(s_max), grid_size)
    values = np.array([theta_quadratic_form(n, float(s)) for s in grid])
    return ThetaProfile(n, grid, values, float(values.max(initial=0.0)))
