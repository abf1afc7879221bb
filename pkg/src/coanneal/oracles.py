"""Membership oracles for the convex bodies used by the sampler and solvers.

Every oracle answers closed-set membership (boundary points are inside) and
keeps a thread-safe query counter. The doubly-nonnegative body and the
copositive cap live in the sqrt(2)-scaled matrix coordinates of
:mod:`coanneal.linalg`.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .linalg import SQRT2, check_symmetric, matrix_order, smat, svec


class MembershipOracle:
    """Black-box membership test for a convex body contained in a ball.

    Attributes:
        dim: ambient dimension.
        enclosing_radius: radius of a Euclidean ball containing the body.
        interior_point: a point strictly inside the body.
    """

    def __init__(self, kind, dim, enclosing_radius, interior_point,
                 morder=0, tol=0.0, name=""):
        self._kind = kind
        self._morder = morder
        self._tol = tol
        self.dim = dim
        self.enclosing_radius = float(enclosing_radius)
        self.interior_point = np.asarray(interior_point, dtype=float)
        self.name = name
        self._lock = threading.Lock()
        self._calls = 0

    @property
    def call_count(self) -> int:
        return self._calls

    def add_calls(self, k: int) -> None:
        """Account for queries issued on this oracle by a compiled walk."""
        with self._lock:
            self._calls += k

    def contains(self, x) -> bool:
        x = np.ascontiguousarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"expected a point of dimension {self.dim}")
        self.add_calls(1)
        return bool(_kernels.membership(self._kind, self._morder,
                                        self.enclosing_radius, self._tol, x))

    def kernel_args(self):
        """(kind, morder, radius, tol) consumed by the compiled walk engine."""
        return self._kind, self._morder, self.enclosing_radius, self._tol


def ball_oracle(n: int, R: float = 1.0) -> MembershipOracle:
    """Euclidean ball of radius R centered at the origin."""
    if R <= 0.0:
        raise ValueError("R must be positive")
    return MembershipOracle(_kernels.BODY_BALL, n, R, np.zeros(n),
                            name=f"ball(n={n}, R={R})")


def cube_oracle(n: int) -> MembershipOracle:
    """Unit hypercube [0, 1]^n."""
    if n < 1:
        raise ValueError("n must be positive")
    return MembershipOracle(_kernels.BODY_CUBE, n, math.sqrt(n),
                            np.full(n, 0.5), name=f"cube(n={n})")


def dnn_interior_point(m: int) -> np.ndarray:
    """Scaled coordinates of m*I + J, strictly inside the DNN body."""
    A = m * np.eye(m) + np.ones((m, m))
    a = svec(A)
    return a / (2.0 * a.sum())


def dnn_oracle(m: int, tol: float = 1e-9) -> MembershipOracle:
    """Doubly-nonnegative body: x >= 0, total matrix mass <= 1, smat(x) PSD.

    The body sits inside the unit ball: for nonnegative x the Euclidean norm
    is at most the 1-norm, which is at most the total matrix entry sum, so
    the enclosing radius is 1.
    """
    if m < 1:
        raise ValueError("m must be positive")
    n = m * (m + 1) // 2
    return MembershipOracle(_kernels.BODY_DNN, n, 1.0, dnn_interior_point(m),
                            morder=m, tol=tol, name=f"dnn(m={m})")


def copositive_cap_oracle(m: int, tol: float = 1e-9) -> MembershipOracle:
    """Unit Frobenius ball intersected with the copositive cone."""
    if not 1 <= m <= 24:
        raise ValueError("m must be in 1..24 (support enumeration budget)")
    n = m * (m + 1) // 2
    interior = svec(np.eye(m)) / (m + 1)
    return MembershipOracle(_kernels.BODY_COPOSITIVE_CAP, n, 1.0, interior,
                            morder=m, tol=tol, name=f"copositive_cap(m={m})")


@dataclass(frozen=True)
class CopositivityCertificate:
    """Outcome of the exact simplex quadratic minimization for copositivity."""
    min_value: float
    witness: np.ndarray
    is_copositive: bool


def big_m_constant(A: np.ndarray) -> float:
    """Big-M constant 2*m*max|A_ij| of the mixed-integer reformulation.

    Exposed for documentation and tests; the solver below enumerates supports
    directly instead of executing the big-M model.
    """
    A = check_symmetric(A)
    return 2.0 * A.shape[0] * float(np.abs(A).max())


def is_copositive(A: np.ndarray, tol: float = 1e-9) -> CopositivityCertificate:
    """Exact copositivity test via enumeration of KKT supports.

    Minimizes a'Aa over the standard simplex by solving, for every support S,
    the bordered system A_SS a_S = lam*e, e'a_S = 1 and keeping KKT-feasible
    candidates; vertex values A_ii are always candidates. A is copositive
    exactly when the minimum is >= -tol; otherwise the witness a gives the
    separating hyperplane <a a', .>.
    """
    A = np.ascontiguousarray(check_symmetric(A))
    if A.shape[0] > 24:
        raise ValueError("support enumeration limited to m <= 24")
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    mv, w = _kernels.copositive_min(A, tol)
    w = np.clip(w, 0.0, None)
    w /= w.sum()
    return CopositivityCertificate(float(mv), w, bool(mv >= -tol))
