"""Numerical certification of the factored quasi-norm equalities.

``bound_audit`` samples random exact factorizations of a target matrix and
checks that no product objective drops below the Schatten quasi-norm;
``local_min_search`` descends the penalized surrogate from random starts
and checks that the weighted-sum objective of the best feasible point
found comes down to the quasi-norm.
"""

import math
from dataclasses import dataclass

import numpy as np

from .descent import block_prox_descent, chain_product, exact_fit_pass
from .errors import InfeasibleDimensionError, UnsupportedSplitError
from .factorization import (
    ExponentSplit,
    FactorSet,
    optimal_factors_m,
    product_objective,
    weighted_sum_objective,
)
from .linalg import as_matrix, numerical_rank, thin_svd
from .norms import schatten_norm

# Mixed absolute-relative slack on lower-bound violations.
AUDIT_TOL = 1e-8
# Relative attainment threshold for the local search.
SEARCH_REL_TOL = 1e-3
# Feasibility gate on sampled/corrected factorizations.
FEAS_RTOL = 1e-8

_LEVELS = 10
_DECAY = 0.35


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a certification run against one target matrix."""

    target_norm: float
    best_found: float
    gap: float
    trials: int
    converged: bool


def _rank_checked(x, d: int):
    a = as_matrix(x)
    svd = thin_svd(a)
    r = numerical_rank(svd.sigma)
    if d < r:
        raise InfeasibleDimensionError(
            f"inner dimension {d} is below the numerical rank {r}")
    return a, svd.left[:, :r], r


def _feasible_sample(a, left, rank, d, num_factors, rng):
    """Random exact factorization of ``a``, or None when correction fails.

    The leading factor mixes Gaussian weights over a column basis that
    contains the target's column space (a plain Gaussian draw would almost
    surely make the final least-squares correction infeasible when d < m);
    interior factors are Gaussian, and the last factor is solved for.
    """
    m, n = a.shape
    if d >= m:
        first = rng.standard_normal((m, d))
    else:
        basis = left
        extra = d - rank
        if extra > 0:
            g = rng.standard_normal((m, extra))
            g -= basis @ (basis.T @ g)
            q, _ = np.linalg.qr(g)
            basis = np.hstack([basis, q])
        first = basis @ rng.standard_normal((d, d))
    mats = [first]
    for _ in range(num_factors - 2):
        mats.append(rng.standard_normal((d, d)))
    prefix = mats[0]
    for f in mats[1:]:
        prefix = prefix @ f
    z, *_ = np.linalg.lstsq(prefix, a, rcond=None)
    if np.linalg.norm(prefix @ z - a) > FEAS_RTOL * max(1.0, np.linalg.norm(a)):
        return None
    mats.append(z.T)
    return mats


def bound_audit(x, split: ExponentSplit, d: int, n_trials: int, seed: int,
                include_constructor: bool = True) -> VerificationReport:
    """Monte-Carlo lower-bound check over random exact factorizations.

    ``best_found`` is the smallest product objective over the kept trials,
    and over the closed-form minimizer as well unless
    ``include_constructor`` is disabled. ``trials`` counts the feasible
    samples actually evaluated. Growing ``n_trials`` under one seed only
    extends the trial set, so reported gaps are nonincreasing in it.
    """
    a, left, rank = _rank_checked(x, d)
    target = schatten_norm(a, split.p)
    rng = np.random.default_rng(seed)
    best = math.inf
    if include_constructor:
        best = product_objective(optimal_factors_m(a, split, d), split)
    kept = 0
    for _ in range(n_trials):
        mats = _feasible_sample(a, left, rank, d, split.num_factors, rng)
        if mats is None:
            continue
        kept += 1
        best = min(best, product_objective(FactorSet(mats, d), split))
    gap = best - target
    converged = best <= target + AUDIT_TOL * max(1.0, target)
    return VerificationReport(target, float(best), float(gap), kept, converged)


def _corrected_value(factors, a, split, d, scale):
    """Exact-feasibility correction of the last factor, then the weighted sum."""
    prefix = factors[0]
    for f in factors[1:-1]:
        prefix = prefix @ f
    z, *_ = np.linalg.lstsq(prefix, a, rcond=None)
    if np.linalg.norm(prefix @ z - a) > FEAS_RTOL * max(1.0, scale):
        return math.inf
    corrected = list(factors[:-1]) + [z.T]
    return weighted_sum_objective(FactorSet(corrected, d), split)


def _random_chain(shape, d, num_factors, scale, rng):
    m, n = shape
    mats = [rng.standard_normal((m, d))]
    for _ in range(num_factors - 2):
        mats.append(rng.standard_normal((d, d)))
    mats.append(rng.standard_normal((n, d)))
    size = np.linalg.norm(chain_product(mats))
    c = (scale / max(size, 1e-300)) ** (1.0 / num_factors)
    return [f * c for f in mats]


def _settle_on_manifold(factors, a, scale, max_passes):
    """Exact alternating fit passes until the chain reproduces the target."""
    for _ in range(max_passes):
        factors, resid = exact_fit_pass(factors, a)
        if resid <= 1e-10 * max(1.0, scale):
            break
    return factors


def local_min_search(x, split: ExponentSplit, d: int, restarts: int = 20,
                     max_iters: int = 500, seed: int = 0,
                     warm_start: bool = False) -> VerificationReport:
    """Descend the penalized surrogate from random starts.

    Each restart first reaches an exact factorization by alternating least
    squares, then minimizes ``mu * (weighted sum) + 0.5 ||chain - X||_F^2``
    over a ``mu`` schedule decreasing toward 0 (gentle enough that the
    quadratic keeps the chain near the feasible set), re-fits, corrects the
    last factor by least squares, and scores the corrected chain by the
    weighted-sum objective. Requires every factor exponent to be >= 1
    (convex per-factor terms); use ``bound_audit`` otherwise. With
    ``warm_start`` the first restart begins at the closed-form minimizer
    instead of a random chain.
    """
    if not split.all_convex():
        raise UnsupportedSplitError(
            f"local search needs all factor exponents >= 1, got {split.parts}")
    a, _, _ = _rank_checked(x, d)
    target = schatten_norm(a, split.p)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return VerificationReport(0.0, 0.0, 0.0, 0, True)
    rng = np.random.default_rng(seed)
    mu0 = 0.1 * scale ** (2.0 - split.p)
    per_level = max(4, max_iters // (_LEVELS + 4))
    best = math.inf
    for k in range(restarts):
        if warm_start and k == 0:
            factors = [f.copy() for f in optimal_factors_m(a, split, d).factors]
            mus = [1e-9 * mu0]
        else:
            factors = _random_chain(a.shape, d, split.num_factors, scale, rng)
            factors = _settle_on_manifold(factors, a, scale, 30)
            mus = [mu0 * _DECAY ** lv for lv in range(_LEVELS)]
        for mu in mus:
            weights = [mu * split.p / q for q in split.parts]
            factors, _, _ = block_prox_descent(
                a, None, split.parts, weights, factors, per_level, 3e-8)
            if np.linalg.norm(chain_product(factors)) < 1e-12 * scale:
                # fully collapsed chain is a dead point; draw a fresh start
                factors = _random_chain(a.shape, d, split.num_factors, scale, rng)
                factors = _settle_on_manifold(factors, a, scale, 30)
        factors = _settle_on_manifold(factors, a, scale, 10)
        best = min(best, _corrected_value(factors, a, split, d, scale))
    gap = best - target
    converged = best <= target * (1.0 + SEARCH_REL_TOL)
    return VerificationReport(target, float(best), float(gap), restarts, converged)
