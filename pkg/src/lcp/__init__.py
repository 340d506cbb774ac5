"""Lifted constraint-based temporal planning over chronicles."""

from .anml import ParseError, parse_file, parse_json, parse_problem, problem_to_json
from .bounded import condition_tokens, effect_tokens, gen_problem
from .encoder import EncodeOptions, Formula, emit_smtlib, encode
from .model import Problem, instantiate_template, validate_chronicle
from .plan import Plan, PlanStep
from .solver import SolverConfig, check_smt, extract_solution, lcp
from .validate import OracleConfig, brute_force_sat, validate_plan

__all__ = [
    "EncodeOptions", "Formula", "OracleConfig", "ParseError", "Plan", "PlanStep", "Problem",
    "SolverConfig", "brute_force_sat", "check_smt", "condition_tokens", "effect_tokens",
    "emit_smtlib", "encode", "extract_solution", "gen_problem", "instantiate_template", "lcp",
    "parse_file", "parse_json", "parse_problem", "problem_to_json", "validate_chronicle",
    "validate_plan",
]
