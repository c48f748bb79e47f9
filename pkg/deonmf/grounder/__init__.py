"""
Compilation of theories and queries into propositional problems.
"""

from .dimacs import emit
from .encoder import MODES, REFUTE, SATISFY, PropProblem, ground
from .reconstruct import assignment_for, reconstruct_model
from .varmap import PropVarMap

__all__ = [
    "MODES",
    "REFUTE",
    "SATISFY",
    "PropProblem",
    "PropVarMap",
    "assignment_for",
    "emit",
    "ground",
    "reconstruct_model",
]
