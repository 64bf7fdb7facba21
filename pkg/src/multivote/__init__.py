"""Exact solvers, reductions, and oracles for rule-assignment election control.

A voter casts one vote per layer; one voting rule is selected for each layer,
and a voter accepts when their per-layer satisfactions, aggregated by sum,
max, or min, reach a threshold.  This package decides whether a rule
assignment can make at least a quota of voters accept, generates hard
instances from classic combinatorial problems, and certifies everything
against independent naive oracles.
"""

from .core import (MAX, MIN, MODELS, SUM, EvalReport, Instance, RuleAssignment,
                   dumps_instance, evaluate, evaluate_voter, loads_instance,
                   read_instance, validate, write_instance)
from .errors import (ExtractionError, ParseError, ReductionRefusedError,
                     ResourceLimitError, UsageError)
from .oracles import OracleVerdict
from .scoring import Profile, RuleSpec, build_tensor, dichotomize, score
from .solvers import (RuleType, SolveResult, SolveStats, rule_types, solve,
                      solve_brute, solve_min_subsets, solve_min_unanimous,
                      solve_subset_fpt)

__all__ = [
    "MAX", "MIN", "MODELS", "SUM",
    "EvalReport", "Instance", "RuleAssignment",
    "dumps_instance", "evaluate", "evaluate_voter", "loads_instance",
    "read_instance", "validate", "write_instance",
    "ExtractionError", "ParseError", "ReductionRefusedError",
    "ResourceLimitError", "UsageError",
    "OracleVerdict",
    "Profile", "RuleSpec", "build_tensor", "dichotomize", "score",
    "RuleType", "SolveResult", "SolveStats", "rule_types", "solve",
    "solve_brute", "solve_min_subsets", "solve_min_unanimous", "solve_subset_fpt",
]

__version__ = "0.1.0"
