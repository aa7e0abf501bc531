"""Equivalence checking for semiring-weighted transition systems.

Strong, weak and delay weighted bisimilarity by partition refinement;
saturated weights are least solutions of linear equation systems over the
active semiring, solved in closed form through star elimination.
"""

from .semiring import (
    INF,
    NEG_INF,
    SEMIRING_NAMES,
    AxiomReport,
    Semiring,
    by_name,
    check_axioms,
)
from .wlts import (
    DocumentError,
    ParseError,
    Partition,
    SemanticError,
    WLTS,
    check_fully_probabilistic,
    check_reactive,
    load,
    serialize,
)
from .solver import (
    ConvergenceError,
    KleeneResult,
    LinearSystem,
    SaturationTable,
    Saturator,
    build_action_system,
    build_delay_system,
    build_tau_system,
    kleene_iterate,
    saturate,
    solve_least,
)
from .bisim import (
    RefinementTrace,
    bisimilar,
    check_is_weak_bisimulation,
    delay_partition,
    partition_for_mode,
    refine_partition,
    split_block,
    split_block_sorted,
    strong_partition,
    weak_partition,
)
from .oracle import (
    FinitePath,
    TraceSelector,
    TruncationError,
    brute_coarsest_partition,
    brute_weight,
    cones_nested_or_disjoint,
    enumerate_admissible,
    milner_weak_oracle,
    minimal_support,
)
from .cli import QuotientError, emit_quotient, to_dot

__version__ = "0.1.0"

__all__ = [
    "INF",
    "NEG_INF",
    "SEMIRING_NAMES",
    "AxiomReport",
    "Semiring",
    "by_name",
    "check_axioms",
    "DocumentError",
    "ParseError",
    "Partition",
    "SemanticError",
    "WLTS",
    "check_fully_probabilistic",
    "check_reactive",
    "load",
    "serialize",
    "ConvergenceError",
    "KleeneResult",
    "LinearSystem",
    "SaturationTable",
    "Saturator",
    "build_action_system",
    "build_delay_system",
    "build_tau_system",
    "kleene_iterate",
    "saturate",
    "solve_least",
    "RefinementTrace",
    "bisimilar",
    "check_is_weak_bisimulation",
    "delay_partition",
    "partition_for_mode",
    "refine_partition",
    "split_block",
    "split_block_sorted",
    "strong_partition",
    "weak_partition",
    "FinitePath",
    "TraceSelector",
    "TruncationError",
    "brute_coarsest_partition",
    "brute_weight",
    "cones_nested_or_disjoint",
    "enumerate_admissible",
    "milner_weak_oracle",
    "minimal_support",
    "QuotientError",
    "emit_quotient",
    "to_dot",
]
