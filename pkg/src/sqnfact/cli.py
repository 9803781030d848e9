"""Command-line front end.

Subcommands: ``norm`` (Schatten quasi-norm of a matrix file), ``factorize``
(closed-form optimal factor chain), ``verify`` (bound audit or local
search), ``complete`` (factored or IRLS completion of a file-based or
synthetic problem), and ``bench`` (both solvers on one synthetic problem).
Every run can write a JSON report; identical flags and seeds reproduce
identical metrics.

Exponents are given as exact rationals ("1/2", "4/3") or decimals; the
reciprocal-sum identity on --p/--parts is checked in exact rational
arithmetic before any float conversion.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from .certify import bound_audit, local_min_search
from .completion import (
    CompletionProblem,
    PenaltySpec,
    factored_complete,
    irls_baseline,
)
from .errors import SplitMismatchError, SqnfactError
from .factorization import make_split, optimal_factors_m, product_objective
from .matio import load_matrix, save_matrix
from .norms import schatten_norm
from .reports import save_report
from .synthetic import gen_lowrank, gen_mask


def _parse_exponent(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SplitMismatchError(f"cannot parse exponent {text!r}") from None
    if value <= 0:
        raise SplitMismatchError(f"exponents must be positive, got {text!r}")
    return value


def _parse_split(p_text: str, parts_text: str):
    """Exact rational check of sum(1/p_i) == 1/p, then a float split."""
    p = _parse_exponent(p_text)
    parts = [_parse_exponent(t) for t in parts_text.split(",")]
    if sum(Fraction(1) / q for q in parts) != 1 / p:
        raise SplitMismatchError(
            f"sum of reciprocals of {parts_text!r} is not 1/({p_text})")
    return make_split(float(p), [float(q) for q in parts])


def _load_input(args) -> np.ndarray:
    return load_matrix(args.input, args.format)


def cmd_norm(args) -> dict:
    x = _load_input(args)
    t0 = time.perf_counter()
    value = schatten_norm(x, float(_parse_exponent(args.p)))
    return {
        "command": "norm",
        "config": {"input": args.input, "p": args.p},
        "metrics": {
            "norm": value,
            "iterations": 0,
            "runtime_seconds": time.perf_counter() - t0,
        },
    }


def cmd_factorize(args) -> dict:
    x = _load_input(args)
    split = _parse_split(args.p, args.parts)
    t0 = time.perf_counter()
    fs = optimal_factors_m(x, split, args.d)
    target = schatten_norm(x, split.p)
    best = product_objective(fs, split)
    runtime = time.perf_counter() - t0
    if args.factors_out:
        for i, f in enumerate(fs.factors, start=1):
            save_matrix(f"{args.factors_out}{i}.mtx", f, "matrix-market")
    return {
        "command": "factorize",
        "config": {"input": args.input, "p": args.p, "parts": args.parts,
                   "d": args.d},
        "metrics": {
            "norm": target,
            "best_found": best,
            "gap": best - target,
            "iterations": 0,
            "runtime_seconds": runtime,
        },
    }


def cmd_verify(args) -> dict:
    x = _load_input(args)
    split = _parse_split(args.p, args.parts)
    t0 = time.perf_counter()
    if args.method == "audit":
        rep = bound_audit(x, split, args.d, args.trials, args.seed)
    else:
        rep = local_min_search(x, split, args.d, restarts=args.restarts,
                               max_iters=args.max_iters, seed=args.seed)
    return {
        "command": "verify",
        "config": {"input": args.input, "p": args.p, "parts": args.parts,
                   "d": args.d, "method": args.method, "trials": args.trials,
                   "restarts": args.restarts, "seed": args.seed},
        "converged": rep.converged,
        "metrics": {
            "norm": rep.target_norm,
            "best_found": rep.best_found,
            "gap": rep.gap,
            "iterations": rep.trials,
            "runtime_seconds": time.perf_counter() - t0,
        },
    }


def _build_problem(args, split):
    """Problem from files or a seeded synthetic instance (plus ground truth)."""
    if args.input is not None:
        observed = load_matrix(args.input, args.format)
        if args.mask_input is not None:
            mask = load_matrix(args.mask_input) != 0
        else:
            mask = np.ones(observed.shape, dtype=bool)
        truth = None
    else:
        for name in ("m", "n", "rank", "fraction"):
            if getattr(args, name) is None:
                raise SqnfactError(
                    f"--{name} is required when no --input is given")
        truth = gen_lowrank(args.m, args.n, args.rank, args.seed)
        mask = gen_mask(args.m, args.n, args.fraction, args.seed + 1)
        observed = truth
    if args.lam is None and args.lam_rel is None:
        raise SqnfactError("one of --lambda / --lambda-rel is required")
    if args.lam is not None and args.lam_rel is not None:
        raise SqnfactError("--lambda and --lambda-rel are mutually exclusive")
    lam = args.lam
    if lam is None:
        lam = args.lam_rel * float(np.linalg.norm(np.where(mask, observed, 0.0)))
    prob = CompletionProblem(observed, mask, lam, PenaltySpec(split, args.d))
    return prob, truth


def _run_solver(name, prob, split, args):
    t0 = time.perf_counter()
    if name == "factored":
        rep = factored_complete(prob, max_outer=args.max_iters)
    else:
        rep = irls_baseline(prob, split.p, args.eps0, max_iters=args.max_iters)
    runtime = time.perf_counter() - t0
    return rep, runtime


def _completion_config(args) -> dict:
    return {"input": args.input, "mask_input": args.mask_input, "m": args.m,
            "n": args.n, "rank": args.rank, "fraction": args.fraction,
            "p": args.p, "parts": args.parts, "d": args.d,
            "lambda": args.lam, "lambda_rel": args.lam_rel,
            "seed": args.seed}


def _rel_error(rep, truth):
    if truth is None:
        return None
    xhat = rep.factors.reconstruct()
    return float(np.linalg.norm(xhat - truth) / max(np.linalg.norm(truth), 1e-300))


def cmd_complete(args) -> dict:
    split = _parse_split(args.p, args.parts)
    prob, truth = _build_problem(args, split)
    rep, runtime = _run_solver(args.solver, prob, split, args)
    metrics = {}
    rel = _rel_error(rep, truth)
    if rel is not None:
        metrics["rel_error"] = rel
    metrics["iterations"] = rep.iterations
    metrics["runtime_seconds"] = runtime
    config = _completion_config(args)
    config["solver"] = args.solver
    return {
        "command": "complete",
        "config": config,
        "converged": rep.converged,
        "metrics": metrics,
        "objective_trace": rep.objective_trace,
    }


def cmd_bench(args) -> dict:
    split = _parse_split(args.p, args.parts)
    prob, truth = _build_problem(args, split)
    solvers = []
    for name in ("factored", "irls"):
        rep, runtime = _run_solver(name, prob, split, args)
        metrics = {}
        rel = _rel_error(rep, truth)
        if rel is not None:
            metrics["rel_error"] = rel
        metrics["iterations"] = rep.iterations
        metrics["runtime_seconds"] = runtime
        solvers.append({
            "name": name,
            "converged": rep.converged,
            "metrics": metrics,
            "objective_trace": rep.objective_trace,
        })
    return {
        "command": "bench",
        "config": _completion_config(args),
        "solvers": solvers,
    }


def _add_split_flags(sub):
    sub.add_argument("--p", required=True, help="target exponent (rational or decimal)")
    sub.add_argument("--parts", required=True,
                     help="comma-separated factor exponents, e.g. '4/3,4/3'")
    sub.add_argument("--d", type=int, required=True, help="inner dimension")


def _add_input_flags(sub):
    sub.add_argument("--input", required=True, help="matrix file to read")
    sub.add_argument("--format", choices=["matrix-market", "csv"],
                     help="input format (default: by file suffix)")


def _add_synth_flags(sub):
    sub.add_argument("--m", type=int, help="synthetic row count")
    sub.add_argument("--n", type=int, help="synthetic column count")
    sub.add_argument("--rank", type=int, help="synthetic rank")
    sub.add_argument("--fraction", type=float, help="observed fraction in (0, 1]")
    sub.add_argument("--lambda", dest="lam", type=float,
                     help="absolute regularization weight")
    sub.add_argument("--lambda-rel", dest="lam_rel", type=float,
                     help="weight relative to the Frobenius norm of the observed data")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--eps0", type=float, default=1.0,
                     help="initial IRLS smoothing")
    sub.add_argument("--max-iters", type=int, default=2000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqnfact",
        description="Factored Schatten quasi-norm objectives, certification, "
                    "and matrix completion")
    parser.add_argument("--output", help="write the JSON report here")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("norm", help="Schatten-p quasi-norm of a matrix file")
    _add_input_flags(sub)
    sub.add_argument("--p", required=True)
    sub.set_defaults(handler=cmd_norm)

    sub = subs.add_parser("factorize", help="closed-form optimal factor chain")
    _add_input_flags(sub)
    _add_split_flags(sub)
    sub.add_argument("--factors-out", help="path prefix for saving the factors")
    sub.set_defaults(handler=cmd_factorize)

    sub = subs.add_parser("verify", help="certify the factored minimum numerically")
    _add_input_flags(sub)
    _add_split_flags(sub)
    sub.add_argument("--method", choices=["audit", "search"], default="audit")
    sub.add_argument("--trials", type=int, default=500)
    sub.add_argument("--restarts", type=int, default=20)
    sub.add_argument("--max-iters", type=int, default=500)
    sub.add_argument("--seed", type=int, default=0)
    sub.set_defaults(handler=cmd_verify)

    sub = subs.add_parser("complete", help="low-rank matrix completion")
    sub.add_argument("--input", help="observed matrix file (else synthetic)")
    sub.add_argument("--format", choices=["matrix-market", "csv"])
    sub.add_argument("--mask-input", help="mask matrix file (nonzero = observed)")
    _add_split_flags(sub)
    _add_synth_flags(sub)
    sub.add_argument("--solver", choices=["factored", "irls"], default="factored")
    sub.set_defaults(handler=cmd_complete)

    sub = subs.add_parser("bench", help="factored and IRLS solvers head to head")
    sub.set_defaults(input=None, mask_input=None, format=None)
    _add_split_flags(sub)
    _add_synth_flags(sub)
    sub.set_defaults(handler=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.handler(args)
    except (SqnfactError, OSError) as exc:
        if args.output:
            try:
                save_report({"command": args.command,
                             "error": {"type": type(exc).__name__,
                                       "message": str(exc)}}, args.output)
            except OSError:
                pass
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        save_report(report, args.output)
    else:
        print(json.dumps(report, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
