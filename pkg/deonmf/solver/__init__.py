"""
Propositional search: DPLL with optional clause learning, enumeration,
parallel cube solving and DIMACS input.
"""

from .dimacs import CnfProblem, parse_dimacs, read_dimacs
from .dpll import Solver, solve
from .enumerate import enumerate_models
from .result import SolverResult, SolverStats, Verdict

__all__ = [
    "CnfProblem",
    "Solver",
    "SolverResult",
    "SolverStats",
    "Verdict",
    "enumerate_models",
    "parse_dimacs",
    "read_dimacs",
    "solve",
]
