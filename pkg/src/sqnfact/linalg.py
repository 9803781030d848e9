"""Dense-matrix validation, thin SVD, and seeded random sampling.

Matrices are plain 2-D float64 numpy arrays throughout the package; no
wrapper type is introduced. Every public operation is a pure function of
its inputs.
"""

from typing import NamedTuple

import numpy as np

from .errors import DimensionError, InvalidInputError

# Singular values below RANK_TOL * sigma_max count as zero for rank decisions.
RANK_TOL = 1e-12


def as_matrix(x) -> np.ndarray:
    """Validate ``x`` as a finite 2-D float64 matrix and return it."""
    a = np.asarray(x, dtype=float)
    if a.ndim != 2:
        raise InvalidInputError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise InvalidInputError("matrix must have at least one row and one column")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix contains NaN or Inf entries")
    return a


def as_nonneg_vector(v) -> np.ndarray:
    """Validate ``v`` as a finite 1-D vector with nonnegative entries."""
    s = np.asarray(v, dtype=float)
    if s.ndim != 1:
        raise InvalidInputError(f"expected a 1-D vector, got ndim={s.ndim}")
    if not np.all(np.isfinite(s)):
        raise InvalidInputError("vector contains NaN or Inf entries")
    if s.size and s.min() < 0.0:
        raise InvalidInputError("vector has a negative entry")
    return s


class ThinSVD(NamedTuple):
    """Thin singular value decomposition ``left @ diag(sigma) @ right.T``."""

    left: np.ndarray   # m x k, orthonormal columns
    sigma: np.ndarray  # k, nonnegative, nonincreasing
    right: np.ndarray  # n x k, orthonormal columns


def thin_svd(x, k: int | None = None) -> ThinSVD:
    """Thin SVD of ``x`` with singular values sorted nonincreasing.

    With ``k`` given, only the top-k triplets are kept; ``k`` may not
    exceed min(rows, cols). Singular vector signs are not normalized.
    """
    a = as_matrix(x)
    kmax = min(a.shape)
    if k is not None:
        if not isinstance(k, (int, np.integer)) or k < 1:
            raise DimensionError(f"k must be a positive integer, got {k!r}")
        if k > kmax:
            raise DimensionError(f"k={k} exceeds min(rows, cols)={kmax}")
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    if k is not None:
        u, s, vt = u[:, :k], s[:k], vt[:k]
    return ThinSVD(u, s, vt.T)


def numerical_rank(sigma, tol: float = RANK_TOL) -> int:
    """Count singular values above ``tol`` times the largest one."""
    s = np.asarray(sigma, dtype=float)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def diag_power(sigma, alpha: float) -> np.ndarray:
    """Elementwise ``sigma_i ** alpha`` for nonnegative sigma; 0**alpha is 0."""
    if not alpha > 0.0:
        raise InvalidInputError(f"alpha must be positive, got {alpha!r}")
    s = as_nonneg_vector(sigma)
    return s ** alpha


def random_orthogonal(n: int, seed: int) -> np.ndarray:
    """Uniformly distributed random n x n orthogonal matrix.

    Orthonormalizes a standard Gaussian draw and fixes the triangular
    factor's diagonal to be nonnegative, which makes the distribution
    uniform over the orthogonal group. Deterministic per seed.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    signs = np.where(np.diag(r) < 0.0, -1.0, 1.0)
    return q * signs


def gaussian_matrix(m: int, n: int, seed: int) -> np.ndarray:
    """m x n matrix of i.i.d. standard normal entries, deterministic per seed."""
    if not (isinstance(m, (int, np.integer)) and isinstance(n, (int, np.integer))):
        raise InvalidInputError("dimensions must be integers")
    if m < 1 or n < 1:
        raise InvalidInputError(f"dimensions must be positive, got {m} x {n}")
    return np.random.default_rng(seed).standard_normal((m, n))
