"""Exponent splits and the closed-form optimal factor chains.

For a target exponent 0 < p <= 1 and factor exponents p_1..p_M with
sum(1/p_i) = 1/p, the minimum over all exact factorizations
X = U_1 ... U_{M-1} U_M^T of both

  * the product of the per-factor Schatten-p_i norms, and
  * the weighted sum  (p * sum_i ||U_i||_{S_{p_i}}^{p_i} / p_i) ** (1/p)

equals the Schatten-p quasi-norm of X, and the minimum is attained by
scaling the left/right singular vectors of X with powers sigma**(p/p_i).
This module builds those minimizers and evaluates both objectives.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InfeasibleDimensionError,
    InvalidExponentError,
    InvalidInputError,
    SplitMismatchError,
)
from .linalg import as_matrix, numerical_rank, thin_svd
from .norms import schatten_norm

# Relative slack allowed on sum(1/p_i) - 1/p; tight enough to catch typos
# while accepting float rounding of user-entered rationals.
SPLIT_RTOL = 1e-12


@dataclass(frozen=True)
class ExponentSplit:
    """Target exponent ``p`` with factor exponents whose reciprocals sum to 1/p."""

    p: float
    parts: tuple[float, ...]

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise InvalidExponentError(f"p must lie in (0, 1], got {self.p!r}")
        if len(self.parts) < 2:
            raise SplitMismatchError("a split needs at least two factor exponents")
        if any(not q > 0.0 for q in self.parts):
            raise InvalidExponentError(f"factor exponents must be positive: {self.parts}")
        lhs = math.fsum(1.0 / q for q in self.parts)
        rhs = 1.0 / self.p
        if abs(lhs - rhs) > SPLIT_RTOL * rhs:
            raise SplitMismatchError(
                f"sum of reciprocal factor exponents {lhs!r} != 1/p = {rhs!r}")

    @property
    def num_factors(self) -> int:
        return len(self.parts)

    def all_convex(self) -> bool:
        """True when every per-factor norm is an honest (convex) norm."""
        return all(q >= 1.0 for q in self.parts)


def make_split(p: float, parts) -> ExponentSplit:
    """Validated split from a target exponent and factor exponents."""
    return ExponentSplit(float(p), tuple(float(q) for q in parts))


def equal_split(p: float, num_factors: int | None = None) -> ExponentSplit:
    """Split with all factor exponents equal to ``num_factors * p``.

    Without ``num_factors``, uses floor(1/p) + 1 factors, the smallest
    count that makes every factor exponent exceed 1 (convex and smooth).
    """
    if num_factors is None:
        if not 0.0 < p < 1.0:
            raise InvalidExponentError(
                f"default factor count requires 0 < p < 1, got {p!r}")
        num_factors = int(math.floor(1.0 / p)) + 1
    else:
        if not isinstance(num_factors, (int, np.integer)) or num_factors < 2:
            raise InvalidInputError(
                f"factor count must be an integer >= 2, got {num_factors!r}")
        if not 0.0 < p <= 1.0:
            raise InvalidExponentError(f"p must lie in (0, 1], got {p!r}")
    return ExponentSplit(float(p), (float(num_factors) * float(p),) * int(num_factors))


@dataclass
class FactorSet:
    """Ordered factor chain reconstructing a matrix.

    The first factor is m x d, interior factors are d x d, and the last is
    n x d stored so the product is
    ``factors[0] @ ... @ factors[-2] @ factors[-1].T``.
    """

    factors: list[np.ndarray]
    inner_dim: int

    def __post_init__(self):
        if len(self.factors) < 2:
            raise InvalidInputError("a factor chain needs at least two matrices")
        d = self.inner_dim
        if d < 1:
            raise InvalidInputError(f"inner dimension must be >= 1, got {d}")
        mats = [as_matrix(f) for f in self.factors]
        if mats[0].shape[1] != d or mats[-1].shape[1] != d:
            raise InvalidInputError("outer factors must have d columns")
        for f in mats[1:-1]:
            if f.shape != (d, d):
                raise InvalidInputError(
                    f"interior factors must be {d} x {d}, got {f.shape}")
        self.factors = mats

    @property
    def shape(self) -> tuple[int, int]:
        return self.factors[0].shape[0], self.factors[-1].shape[0]

    def reconstruct(self) -> np.ndarray:
        """Chained product of the factors (last factor transposed)."""
        out = self.factors[0]
        for f in self.factors[1:-1]:
            out = out @ f
        return out @ self.factors[-1].T


def _sigma_powers(x, split: ExponentSplit, d: int):
    """Rank-truncated SVD of x plus the per-factor diagonal powers."""
    a = as_matrix(x)
    if d < 1:
        raise InvalidInputError(f"inner dimension must be >= 1, got {d}")
    svd = thin_svd(a)
    r = numerical_rank(svd.sigma)
    if d < r:
        raise InfeasibleDimensionError(
            f"inner dimension {d} is below the numerical rank {r}")
    sigma = svd.sigma[:r]
    powers = [sigma ** (split.p / q) for q in split.parts]
    return a, svd.left[:, :r], svd.right[:, :r], powers, r


def optimal_factors_m(x, split: ExponentSplit, d: int) -> FactorSet:
    """Closed-form factor chain attaining the Schatten-p quasi-norm of x.

    The first factor carries the left singular vectors, the last the right
    ones, interior factors are diagonal, and each gets the singular values
    raised to p/p_i. Columns beyond the rank are zero-padded up to d, which
    leaves every objective value unchanged.
    """
    a, left, right, powers, r = _sigma_powers(x, split, d)
    m, n = a.shape
    mats = []
    first = np.zeros((m, d))
    first[:, :r] = left * powers[0]
    mats.append(first)
    for k in range(1, split.num_factors - 1):
        mid = np.zeros((d, d))
        mid[:r, :r] = np.diag(powers[k])
        mats.append(mid)
    last = np.zeros((n, d))
    last[:, :r] = right * powers[-1]
    mats.append(last)
    return FactorSet(mats, d)


def optimal_factors_two(x, split: ExponentSplit, d: int) -> FactorSet:
    """Two-factor minimizer U V^T with U = L sigma**(p/p1), V = R sigma**(p/p2)."""
    if split.num_factors != 2:
        raise InvalidInputError(f"expected a two-part split, got {split.num_factors}")
    return optimal_factors_m(x, split, d)


def optimal_factors_three(x, split: ExponentSplit, d: int) -> FactorSet:
    """Three-factor minimizer U V W^T with a diagonal middle factor."""
    if split.num_factors != 3:
        raise InvalidInputError(f"expected a three-part split, got {split.num_factors}")
    return optimal_factors_m(x, split, d)


def product_objective(fs: FactorSet, split: ExponentSplit) -> float:
    """Product of the per-factor Schatten-p_i norms."""
    if len(fs.factors) != split.num_factors:
        raise InvalidInputError(
            f"{len(fs.factors)} factors but {split.num_factors} exponents")
    out = 1.0
    for f, q in zip(fs.factors, split.parts):
        out *= schatten_norm(f, q)
    return float(out)


def weighted_sum_objective(fs: FactorSet, split: ExponentSplit) -> float:
    """``(p * sum_i ||U_i||_{S_{p_i}}^{p_i} / p_i) ** (1/p)``.

    Never smaller than ``product_objective`` (weighted arithmetic-geometric
    mean inequality), with equality exactly when all powered factor norms
    agree.
    """
    if len(fs.factors) != split.num_factors:
        raise InvalidInputError(
            f"{len(fs.factors)} factors but {split.num_factors} exponents")
    total = math.fsum(
        schatten_norm(f, q) ** q / q for f, q in zip(fs.factors, split.parts))
    return float((split.p * total) ** (1.0 / split.p))
