"""Synthetic low-rank completion instances."""

import numpy as np

from .errors import InvalidInputError


def gen_lowrank(m: int, n: int, r: int, seed: int) -> np.ndarray:
    """Rank-r m x n matrix as a product of two Gaussian factors."""
    if m < 1 or n < 1:
        raise InvalidInputError(f"dimensions must be positive, got {m} x {n}")
    if not 1 <= r <= min(m, n):
        raise InvalidInputError(f"rank must lie in [1, min(m, n)], got {r}")
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m, r)) @ rng.standard_normal((n, r)).T


def gen_mask(m: int, n: int, fraction: float, seed: int) -> np.ndarray:
    """i.i.d. boolean mask with observation probability ``fraction``.

    Resamples until at least one entry is observed.
    """
    if m < 1 or n < 1:
        raise InvalidInputError(f"dimensions must be positive, got {m} x {n}")
    if not 0.0 < fraction <= 1.0:
        raise InvalidInputError(f"fraction must lie in (0, 1], got {fraction!r}")
    rng = np.random.default_rng(seed)
    while True:
        mask = rng.random((m, n)) < fraction
        if mask.any():
            return mask
