"""Schatten norms and quasi-norms, powered traces, and the rotation-trace gap.

``schatten_norm(x, p)`` evaluates ``(sum_i sigma_i(x)**p) ** (1/p)`` from a
full thin SVD; for p >= 1 this is a norm (p=1 nuclear, p=2 Frobenius), for
0 < p < 1 a quasi-norm. Singular values below the numerical-rank cutoff are
treated as exact zeros so they never contribute, even for small p.
"""

import numpy as np

from .errors import InvalidExponentError, InvalidInputError
from .linalg import RANK_TOL, as_matrix, as_nonneg_vector, thin_svd

# Orthogonality defect tolerated when validating rotation inputs.
ORTHO_TOL = 1e-10


def schatten_norm(x, p: float) -> float:
    """Schatten-p norm (p >= 1) or quasi-norm (0 < p < 1) of a matrix."""
    if not p > 0.0:
        raise InvalidExponentError(f"p must be positive, got {p!r}")
    sigma = thin_svd(as_matrix(x)).sigma
    if sigma.size == 0 or sigma[0] <= 0.0:
        return 0.0
    sigma = np.where(sigma > RANK_TOL * sigma[0], sigma, 0.0)
    return float(np.sum(sigma ** p) ** (1.0 / p))


def trace_power(sigma, p: float) -> float:
    """``sum_i sigma_i**p`` for a nonnegative vector; 0**p contributes 0."""
    if not p > 0.0:
        raise InvalidExponentError(f"p must be positive, got {p!r}")
    s = as_nonneg_vector(sigma)
    return float(np.sum(s ** p))


def rotation_trace_gap(sigma, a, p: float) -> float:
    """Powered-trace excess of a rotated diagonal over the diagonal itself.

    Returns ``sum_k diag(A S A^T)_k**p - sum_i sigma_i**p`` with
    ``S = diag(sigma)``. The rotated diagonal entries are convex
    combinations of the sigma_i, hence nonnegative, and for 0 < p <= 1
    the gap is nonnegative up to roundoff.
    """
    if not 0.0 < p <= 1.0:
        raise InvalidExponentError(f"p must lie in (0, 1], got {p!r}")
    s = as_nonneg_vector(sigma)
    q = as_matrix(a)
    r = s.size
    if q.shape != (r, r):
        raise InvalidInputError(
            f"rotation must be {r} x {r} to match sigma, got {q.shape}")
    defect = np.max(np.abs(q.T @ q - np.eye(r)))
    if defect > ORTHO_TOL:
        raise InvalidInputError(
            f"matrix is not orthogonal (max |A^T A - I| = {defect:.3e})")
    rotated_diag = np.einsum("ki,i,ki->k", q, s, q)
    rotated_diag = np.maximum(rotated_diag, 0.0)
    return float(np.sum(rotated_diag ** p) - np.sum(s ** p))
