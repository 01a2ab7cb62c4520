"""Polynomial representability of functions over Z_{p^n}.

Decide whether a table of values (Z_{p^n})^m -> Z_{p^n} comes from a
polynomial, produce an explicit witness polynomial when it does, and
cross-check everything against brute-force enumeration at desk scale.
"""

from .decide import (
    Decision,
    Stage,
    Witness,
    carlitz_verify,
    decide_multivariate,
    decide_univariate,
    decide_univariate_two_stage,
    reconstruct_carlitz,
)
from .funcspace import (
    ArityMismatch,
    CapacityExceeded,
    FuncTable,
    ResidueClassView,
    cyclic_shift,
    merge_classes,
    split_classes,
)
from .gens import (
    GeneratorBasis,
    GeneratorEntry,
    Polynomial,
    build_generators,
    generator_polynomial,
    generator_table,
)
from .linsolve import (
    DimensionMismatch,
    LocalSystem,
    PivotStep,
    SolveOutcome,
    SolveStatus,
    solve_shared,
    solve_system,
)
from .oracle import (
    BudgetExceeded,
    PolyFunctionSet,
    brute_force_member,
    count_polynomial_functions,
    enumerate_polynomial_functions,
    kempner_bound,
    span_enumerate,
)
from .synth import SynthesizedPolynomial, UnknownGenerator, eval_polynomial, synthesize
from .zring import NotAUnit, RingCtx

__all__ = [
    "ArityMismatch",
    "BudgetExceeded",
    "CapacityExceeded",
    "Decision",
    "DimensionMismatch",
    "FuncTable",
    "GeneratorBasis",
    "GeneratorEntry",
    "LocalSystem",
    "NotAUnit",
    "PivotStep",
    "PolyFunctionSet",
    "Polynomial",
    "ResidueClassView",
    "RingCtx",
    "SolveOutcome",
    "SolveStatus",
    "Stage",
    "SynthesizedPolynomial",
    "UnknownGenerator",
    "Witness",
    "brute_force_member",
    "build_generators",
    "carlitz_verify",
    "count_polynomial_functions",
    "cyclic_shift",
    "decide_multivariate",
    "decide_univariate",
    "decide_univariate_two_stage",
    "enumerate_polynomial_functions",
    "eval_polynomial",
    "generator_polynomial",
    "generator_table",
    "kempner_bound",
    "merge_classes",
    "reconstruct_carlitz",
    "solve_shared",
    "solve_system",
    "span_enumerate",
    "split_classes",
    "synthesize",
]
