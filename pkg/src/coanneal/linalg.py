"""Symmetric-matrix coordinates and eigenvalue-based PSD testing.

The coordinate map scales off-diagonal entries by sqrt(2) so that the trace
inner product on symmetric matrices becomes the Euclidean inner product on
the coordinate vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT2 = math.sqrt(2.0)


class DimensionError(ValueError):
    """Raised when a vector length is not compatible with a matrix order."""


def matrix_order(length: int) -> int:
    """Matrix order m with m*(m+1)/2 == length, or raise DimensionError."""
    m = int((math.isqrt(8 * length + 1) - 1) // 2)
    if m * (m + 1) // 2 != length:
        raise DimensionError(f"{length} is not a triangular number")
    return m


def check_symmetric(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * (1.0 + np.abs(A).max())):
        raise ValueError("matrix is not symmetric")
    return A


def svec(A: np.ndarray) -> np.ndarray:
    """Row-major upper-triangle coordinates with sqrt(2)-scaled off-diagonals."""
    A = check_symmetric(A)
    m = A.shape[0]
    out = np.empty(m * (m + 1) // 2)
    k = 0
    for i in range(m):
        out[k] = A[i, i]
        r = m - 1 - i
        out[k + 1:k + 1 + r] = SQRT2 * A[i, i + 1:]
        k += 1 + r
    return out


def smat(a: np.ndarray) -> np.ndarray:
    """Inverse of svec: smat(svec(A)) == A and svec(smat(a)) == a."""
    a = np.asarray(a, dtype=float).ravel()
    m = matrix_order(a.shape[0])
    A = np.empty((m, m))
    k = 0
    for i in range(m):
        A[i, i] = a[k]
        r = m - 1 - i
        row = a[k + 1:k + 1 + r] / SQRT2
        A[i, i + 1:] = row
        A[i + 1:, i] = row
        k += 1 + r
    return A


@dataclass(frozen=True)
class SpectralSummary:
    min_eigenvalue: float
    max_abs_eigenvalue: float


def spectral_summary(A: np.ndarray, tol: float = 1e-10) -> SpectralSummary:
    """Extreme eigenvalues of a symmetric matrix.

    tol is accepted for interface stability; the dense symmetric
    eigendecomposition used here resolves eigenvalues well below any
    practical tolerance. LinAlgError propagates on non-convergence.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    A = check_symmetric(A)
    ev = np.linalg.eigvalsh(A)
    return SpectralSummary(float(ev[0]), float(np.max(np.abs(ev))))


def is_psd(A: np.ndarray, tol: float | None = None) -> bool:
    """True when the smallest eigenvalue is at least -tol.

    The default tolerance 1e-9 * (1 + ||A||_F) is relative so the test stays
    stable across matrix scales.
    """
    A = check_symmetric(A)
    if tol is None:
        tol = 1e-9 * (1.0 + float(np.linalg.norm(A)))
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    return spectral_summary(A).min_eigenvalue >= -tol
