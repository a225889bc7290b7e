"""Answer sets for logic programs with aggregates and set constructs.

Three semantics are available: the set-name semantics (``alog``), the
FLP-style semantics (``flog``) and the conditional-satisfaction semantics
(``slog``), plus a propagation-based solver for the first.
"""

from .alog import Caps, apply_aggregate, enumerate_answer_sets, is_answer_set, truth_value
from .analysis import aggregate_stratification, compare_semantics, is_af_compatible, split_solve, splitting_set_check
from .asolver import iter_solutions, solve
from .errors import AlogError, CapExceeded, FragmentError, GroundingError, ParseError, UnsafeRuleError
from .flog import enumerate_answer_sets_flog, is_answer_set_flog
from .grounder import ground_alog, ground_flog
from .parser import format_program, parse_literals, parse_program
from .slog import enumerate_answer_sets_slog, is_answer_set_slog
from .syntax import GroundProgram, Literal, Program, Rule, TruthValue

__all__ = [
    "AlogError",
    "CapExceeded",
    "Caps",
    "FragmentError",
    "GroundProgram",
    "GroundingError",
    "Literal",
    "ParseError",
    "Program",
    "Rule",
    "TruthValue",
    "UnsafeRuleError",
    "aggregate_stratification",
    "apply_aggregate",
    "compare_semantics",
    "enumerate_answer_sets",
    "enumerate_answer_sets_flog",
    "enumerate_answer_sets_slog",
    "format_program",
    "ground_alog",
    "ground_flog",
    "is_af_compatible",
    "is_answer_set",
    "is_answer_set_flog",
    "is_answer_set_slog",
    "iter_solutions",
    "parse_literals",
    "parse_program",
    "solve",
    "split_solve",
    "splitting_set_check",
    "truth_value",
]
