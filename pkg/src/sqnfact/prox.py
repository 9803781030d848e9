"""Scalar l_p shrinkage-thresholding and the spectral Schatten prox.

``lp_prox_scalar(y, tau, p)`` returns a global minimizer of

    tau * |x|**p + 0.5 * (x - y)**2

for 0 < p <= 2. Closed forms are used for p in {1/2, 2/3, 1, 2}:

  * p=1   soft threshold  sign(y) * max(|y| - tau, 0)
  * p=2   ridge shrink    y / (1 + 2 tau)
  * p=1/2 the stationarity condition in b = sqrt(x) is the depressed cubic
          b**3 - |y| b + tau/2 = 0; below |y| = (3/2) tau**(2/3) the
          minimizer is 0, above it the largest cubic root (trigonometric
          form) gives x = b**2.
  * p=2/3 in c = x**(1/3) stationarity is the quartic
          c**4 - |y| c + 2 tau / 3 = 0, solved through the resolvent cubic
          z**3 - (8 tau / 3) z - y**2 = 0; the threshold is
          |y| = 2 (2 tau / 3)**(3/4).

Every other exponent is handled by thresholding plus a bisection-safeguarded
Newton iteration on the stationarity equation. Ties at the thresholding
boundary resolve to 0.
"""

import math

import numpy as np

from .errors import UnsupportedExponentError
from .linalg import as_matrix, thin_svd

_NEWTON_STEPS = 100


def _prox_half(ay: float, tau: float) -> float:
    if ay <= 1.5 * tau ** (2.0 / 3.0):
        return 0.0
    arg = -(3.0 * math.sqrt(3.0) / 4.0) * tau * ay ** (-1.5)
    b = 2.0 * math.sqrt(ay / 3.0) * math.cos(math.acos(arg) / 3.0)
    return b * b


def _prox_two_thirds(ay: float, tau: float) -> float:
    if ay <= 2.0 * (2.0 * tau / 3.0) ** 0.75:
        return 0.0
    rad = ay ** 4 / 4.0 - 512.0 * tau ** 3 / 729.0
    sq = math.sqrt(max(rad, 0.0))
    z = np.cbrt(ay * ay / 2.0 + sq) + np.cbrt(ay * ay / 2.0 - sq)
    s = math.sqrt(z)
    c = 0.5 * (s + math.sqrt(max(2.0 * ay / s - z, 0.0)))
    return c ** 3


def _prox_newton(ay: float, tau: float, p: float) -> float:
    """Largest stationary point of the shifted objective on (0, ay]."""
    if p < 1.0:
        # below this |y| the objective has no interior minimum beating 0
        base = (2.0 * tau * (1.0 - p)) ** (1.0 / (2.0 - p))
        thresh = base + tau * p * base ** (p - 1.0)
        if ay <= thresh:
            return 0.0
        lo = (tau * p * (1.0 - p)) ** (1.0 / (2.0 - p))  # inflection of x + tau p x**(p-1)
    else:
        lo = 0.0
    hi = ay
    x = ay
    for _ in range(_NEWTON_STEPS):
        g = x + tau * p * x ** (p - 1.0) - ay
        if g > 0.0:
            hi = x
        else:
            lo = x
        gp = 1.0 + tau * p * (p - 1.0) * x ** (p - 2.0)
        step_ok = gp > 0.0
        if step_ok:
            xn = x - g / gp
            step_ok = lo < xn < hi
        if not step_ok:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-15 * max(1.0, x):
            x = xn
            break
        x = xn
    # resolve against the spike at zero; ties go to 0
    if p < 1.0 and 0.5 * ay * ay <= tau * x ** p + 0.5 * (x - ay) ** 2:
        return 0.0
    return x


def lp_prox_scalar(y: float, tau: float, p: float) -> float:
    """Global minimizer of ``tau |x|**p + 0.5 (x - y)**2`` for 0 < p <= 2.

    The result has the sign of ``y`` (or is 0) and magnitude at most |y|.
    """
    if not 0.0 < p <= 2.0:
        raise UnsupportedExponentError(f"p must lie in (0, 2], got {p!r}")
    if not tau > 0.0:
        raise UnsupportedExponentError(f"tau must be positive, got {tau!r}")
    y = float(y)
    ay = abs(y)
    if ay == 0.0:
        return 0.0
    if p == 1.0:
        mag = max(ay - tau, 0.0)
    elif p == 2.0:
        mag = ay / (1.0 + 2.0 * tau)
    elif p == 0.5:
        mag = _prox_half(ay, tau)
    elif p == 2.0 / 3.0:
        mag = _prox_two_thirds(ay, tau)
    else:
        mag = _prox_newton(ay, tau, p)
    return math.copysign(mag, y) if mag != 0.0 else 0.0


def schatten_prox(y, tau: float, p: float) -> np.ndarray:
    """Prox of ``tau * ||.||_{S_p}^p``: scalar prox applied to singular values."""
    a = as_matrix(y)
    left, sigma, right = thin_svd(a)
    shrunk = np.array([lp_prox_scalar(s, tau, p) for s in sigma])
    return (left * shrunk) @ right.T
