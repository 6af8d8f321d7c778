"""Perfect difference sets constructed from Sidon sets, verified by brute force."""

__version__ = "0.1.0"

from .core import (
    IntegerSet,
    InvalidArgumentError,
    InvariantViolation,
    NonUniqueError,
    VerificationReport,
    counting_function,
    coverage,
    diff_count,
    dilate,
    is_perfect_diff_prefix,
    is_sidon,
    sum_count,
    t_value,
    union_decomposition_check,
)
from .finite_sidon import PrunedSidonSet, prune_to_bp, ruzsa_sidon
from .greedy import GreedyTrace, build_greedy, t_growth_report
from .kruckeberg import KruckebergTrace, build_kruckeberg, density_ratio, union_lemma_check
from .primes import is_prime, next_prime, primitive_root
from .theorem1 import (
    ConstructionTrace,
    GrowthFunction,
    USequence,
    build_a,
    build_b0,
    check_u_properties,
    removal_bound_check,
    u_block,
)

__all__ = [
    "ConstructionTrace",
    "GreedyTrace",
    "GrowthFunction",
    "IntegerSet",
    "InvalidArgumentError",
    "InvariantViolation",
    "KruckebergTrace",
    "NonUniqueError",
    "PrunedSidonSet",
    "USequence",
    "VerificationReport",
    "build_a",
    "build_b0",
    "build_greedy",
    "build_kruckeberg",
    "check_u_properties",
    "counting_function",
    "coverage",
    "density_ratio",
    "diff_count",
    "dilate",
    "is_perfect_diff_prefix",
    "is_prime",
    "is_sidon",
    "next_prime",
    "primitive_root",
    "prune_to_bp",
    "removal_bound_check",
    "ruzsa_sidon",
    "sum_count",
    "t_growth_report",
    "t_value",
    "u_block",
    "union_decomposition_check",
    "union_lemma_check",
]
