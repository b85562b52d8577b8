"""Exact solvers for combinatorial optimization problems with interaction costs."""

from .bruteforce import linearizable_bruteforce, solve_bruteforce, solve_by_side_enumeration
from .core import (
    INF,
    CopicError,
    DiagonalCosts,
    DomainError,
    EnumerationTooLarge,
    InfeasibleError,
    Instance,
    LinearizabilityCertificate,
    NegativeCycleError,
    NoSolutionError,
    PreconditionError,
    Solution,
    UnsupportedError,
    evaluate_objective,
    format_cost,
    to_cost,
    validate_instance,
)
from .families import (
    BipartitePerfectMatching,
    GraphicMatroid,
    PartitionMatroid,
    StPath,
    Unconstrained,
    UniformMatroid,
)

__all__ = [
    "INF", "BipartitePerfectMatching", "CopicError", "DiagonalCosts", "DomainError",
    "EnumerationTooLarge", "GraphicMatroid", "InfeasibleError", "Instance",
    "LinearizabilityCertificate", "NegativeCycleError", "NoSolutionError", "PartitionMatroid",
    "PreconditionError", "Solution", "StPath", "Unconstrained", "UniformMatroid",
    "UnsupportedError", "evaluate_objective", "format_cost", "linearizable_bruteforce",
    "solve_bruteforce", "solve_by_side_enumeration", "to_cost", "validate_instance",
]
