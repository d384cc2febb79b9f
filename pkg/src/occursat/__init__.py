"""Exact satisfiability for CNF with at most three occurrences per variable."""

from .branching import GATE, BranchDecision, BranchVector, tau
from .dimacs import DimacsError, emit, parse, read_document
from .endgame import check_endgame, solve_3sat
from .formula import ContractError, Formula, InvariantError
from .oracle import Profile, brute_force_sat, random_3occur, random_cnf
from .reconstruction import check_model, extend_model
from .safe_resolution import safe_resolve, step6d_search
from .solver import SolverOptions, solve
from .standardize import standardize
from .transformer import reduce_degree
from .verdict import SAT, UNKNOWN, UNSAT, SolveStats, SolveVerdict

__all__ = [
    "GATE", "BranchDecision", "BranchVector", "tau",
    "DimacsError", "emit", "parse", "read_document",
    "check_endgame", "solve_3sat",
    "ContractError", "Formula", "InvariantError",
    "Profile", "brute_force_sat", "random_3occur", "random_cnf",
    "check_model", "extend_model",
    "safe_resolve", "step6d_search",
    "SolverOptions", "solve",
    "standardize", "reduce_degree",
    "SAT", "UNKNOWN", "UNSAT", "SolveStats", "SolveVerdict",
]
