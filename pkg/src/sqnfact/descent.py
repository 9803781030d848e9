"""Block proximal-gradient descent over a factor chain.

Minimizes

    sum_i w_i * ||U_i||_{S_{p_i}}^{p_i}
        + 0.5 * || mask * (U_1 ... U_{M-1} U_M^T - D) ||_F^2

by cycling through the factors. Each factor takes one or more
proximal-gradient steps: a gradient step on the coupling term with a step
size from the spectral norms of the frozen partial products, then the
Schatten prox with exponent p_i, halving the step until the full objective
does not increase. The recorded objective trace is nonincreasing up to a
1e-12-scale slack per pass.
"""

import numpy as np

from .errors import NumericalFailureError
from .norms import schatten_norm
from .prox import schatten_prox

# Acceptance slack per prox step; a full pass stays within the
# 1e-12-per-pass contract on the trace.
_ACCEPT_SLACK = 1e-13
_FAIL_SLACK = 1e-12
_MAX_HALVINGS = 60


def chain_product(factors) -> np.ndarray:
    """Product of a factor chain, last factor transposed."""
    out = factors[0]
    for f in factors[1:-1]:
        out = out @ f
    return out @ factors[-1].T


def _masked_half_sq(resid, mask) -> float:
    if mask is not None:
        resid = np.where(mask, resid, 0.0)
    return 0.5 * float(np.sum(resid * resid))


def _penalty(f, w, p) -> float:
    if w == 0.0:
        return 0.0
    return w * schatten_norm(f, p) ** p


def _spectral(a) -> float:
    return float(np.linalg.norm(a, 2))


def _surroundings(factors, i):
    """Frozen products so the chain is left @ U_i @ right (right=None for last)."""
    num = len(factors)
    if i == num - 1:
        left = factors[0]
        for f in factors[1:num - 1]:
            left = left @ f
        return left, None
    left = None
    if i > 0:
        left = factors[0]
        for f in factors[1:i]:
            left = left @ f
    right = None
    for f in factors[i + 1:num - 1]:
        right = f if right is None else right @ f
    right = factors[-1].T if right is None else right @ factors[-1].T
    return left, right


def block_prox_descent(dmat, mask, parts, weights, factors,
                       max_outer: int, rel_tol: float, inner_steps: int = 1):
    """Run the cyclic updates; returns (factors, objective_trace, converged).

    ``mask`` is a boolean array or None for fully observed targets.
    ``factors`` must follow the chain layout (first m x d, interior d x d,
    last n x d holding the transposed tail).
    """
    factors = [np.array(f, dtype=float) for f in factors]
    num = len(factors)
    penalties = [_penalty(f, w, p) for f, w, p in zip(factors, weights, parts)]
    fit = _masked_half_sq(chain_product(factors) - dmat, mask)
    trace = [float(sum(penalties) + fit)]
    converged = False
    # accepted step sizes carry over between passes, in units of 1/Lipschitz;
    # masked problems tolerate far larger steps than the unmasked bound
    boosts = [1.0] * num

    for _ in range(max_outer):
        for i in range(num):
            left, right = _surroundings(factors, i)
            last = right is None
            if last:
                lip = _spectral(left) ** 2
            else:
                lip = ((_spectral(left) if left is not None else 1.0)
                       * _spectral(right)) ** 2
            eta0 = boosts[i] / max(lip, 1e-12)

            def fit_and_resid(u):
                if last:
                    resid = left @ u.T - dmat
                else:
                    resid = (left @ u if left is not None else u) @ right - dmat
                if mask is not None:
                    resid = np.where(mask, resid, 0.0)
                return 0.5 * float(np.sum(resid * resid)), resid

            fit, resid = fit_and_resid(factors[i])
            others = sum(penalties) - penalties[i]
            # extrapolated base point for the inner steps; restarts on any
            # objective increase keep the recorded trace monotone
            momentum = 0.0
            prev = factors[i]
            stalled = False
            for _ in range(inner_steps):
                cur = factors[i]
                base = cur if momentum == 0.0 else cur + momentum * (cur - prev)
                base_fit, base_resid = (fit, resid) if base is cur \
                    else fit_and_resid(base)
                if last:
                    grad = base_resid.T @ left
                else:
                    grad = base_resid @ right.T
                    if left is not None:
                        grad = left.T @ grad
                obj = others + penalties[i] + fit
                slack = _ACCEPT_SLACK * max(1.0, abs(obj))
                eta = eta0
                accepted = False
                new_obj = obj
                for halvings in range(_MAX_HALVINGS):
                    step = base - eta * grad
                    tau = eta * weights[i]
                    cand = schatten_prox(step, tau, parts[i]) if tau > 0.0 else step
                    cand_pen = _penalty(cand, weights[i], parts[i])
                    cand_fit, cand_resid = fit_and_resid(cand)
                    new_obj = others + cand_pen + cand_fit
                    if new_obj <= obj + slack:
                        prev = factors[i]
                        factors[i] = cand
                        penalties[i] = cand_pen
                        fit, resid = cand_fit, cand_resid
                        accepted = True
                        if halvings == 0:
                            boosts[i] = min(boosts[i] * 2.0, 1024.0)
                            momentum = min(momentum + 0.3, 0.95)
                        else:
                            boosts[i] = max(boosts[i] * 0.5 ** halvings, 1.0)
                        eta0 = boosts[i] / max(lip, 1e-12)
                        break
                    if momentum > 0.0 and halvings >= 1:
                        # drop the extrapolation before shrinking further
                        momentum = 0.0
                        base = cur
                        base_fit, base_resid = fit, resid
                        if last:
                            grad = base_resid.T @ left
                        else:
                            grad = base_resid @ right.T
                            if left is not None:
                                grad = left.T @ grad
                        continue
                    eta *= 0.5
                if not accepted:
                    boosts[i] = 1.0
                    if not new_obj <= obj + _FAIL_SLACK * max(1.0, abs(obj)):
                        raise NumericalFailureError(
                            "objective increased after exhausting backtracking",
                            trace)
                    stalled = True
                    break  # within the failure slack: keep the factor as is
            del stalled

        total = float(sum(penalties) + fit)
        trace.append(total)
        prev = trace[-2]
        if abs(prev - total) <= rel_tol * max(abs(prev), 1e-30):
            converged = True
            break

    return factors, trace, converged


def exact_fit_pass(factors, dmat):
    """One cycle of exact least-squares factor solves for the unmasked fit.

    Each factor is replaced by the minimizer of ||chain - dmat||_F with the
    others frozen, which never increases the residual. Returns the factors
    and the final residual Frobenius norm.
    """
    factors = [np.array(f, dtype=float) for f in factors]
    num = len(factors)
    resid = None
    for i in range(num):
        left, right = _surroundings(factors, i)
        if right is None:
            sol, *_ = np.linalg.lstsq(left, dmat, rcond=None)
            factors[i] = sol.T
            resid = float(np.linalg.norm(left @ sol - dmat))
        else:
            target = dmat
            if left is not None:
                target = np.linalg.pinv(left) @ target
            factors[i] = target @ np.linalg.pinv(right)
    return factors, resid
