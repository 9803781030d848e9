"""Factored Schatten-p quasi-norm objectives, certification, and completion solvers."""

from .certify import VerificationReport, bound_audit, local_min_search
from .completion import (
    CompletionProblem,
    PenaltySpec,
    SolveReport,
    factored_complete,
    irls_baseline,
    objective_eval,
)
from .errors import (
    DimensionError,
    InfeasibleDimensionError,
    InvalidExponentError,
    InvalidInputError,
    InvalidProblemError,
    MatrixFormatError,
    NumericalFailureError,
    SplitMismatchError,
    SqnfactError,
    UnsupportedExponentError,
    UnsupportedSplitError,
)
from .factorization import (
    ExponentSplit,
    FactorSet,
    equal_split,
    make_split,
    optimal_factors_m,
    optimal_factors_three,
    optimal_factors_two,
    product_objective,
    weighted_sum_objective,
)
from .linalg import (
    RANK_TOL,
    ThinSVD,
    diag_power,
    gaussian_matrix,
    numerical_rank,
    random_orthogonal,
    thin_svd,
)
from .matio import load_matrix, save_matrix
from .norms import rotation_trace_gap, schatten_norm, trace_power
from .prox import lp_prox_scalar, schatten_prox
from .synthetic import gen_lowrank, gen_mask

__version__ = "0.1.0"

__all__ = [
    "CompletionProblem",
    "DimensionError",
    "ExponentSplit",
    "FactorSet",
    "InfeasibleDimensionError",
    "InvalidExponentError",
    "InvalidInputError",
    "InvalidProblemError",
    "MatrixFormatError",
    "NumericalFailureError",
    "PenaltySpec",
    "RANK_TOL",
    "SolveReport",
    "SplitMismatchError",
    "SqnfactError",
    "ThinSVD",
    "UnsupportedExponentError",
    "UnsupportedSplitError",
    "VerificationReport",
    "bound_audit",
    "diag_power",
    "equal_split",
    "factored_complete",
    "gaussian_matrix",
    "gen_lowrank",
    "gen_mask",
    "irls_baseline",
    "load_matrix",
    "local_min_search",
    "lp_prox_scalar",
    "make_split",
    "numerical_rank",
    "objective_eval",
    "optimal_factors_m",
    "optimal_factors_three",
    "optimal_factors_two",
    "product_objective",
    "random_orthogonal",
    "rotation_trace_gap",
    "save_matrix",
    "schatten_norm",
    "schatten_prox",
    "thin_svd",
    "trace_power",
    "weighted_sum_objective",
]
