"""
Core package for deon-mf.

Bounded model finding for a quantified dyadic deontic logic with contexts of
use: a typed surface language, a reference evaluator over finite
interpretations, a grounder to CNF, a DPLL solver and the Gewirth corpus.
"""

from .check import Checker, load_theory
from .config import CheckerConfig

__all__ = ["Checker", "CheckerConfig", "load_theory"]
