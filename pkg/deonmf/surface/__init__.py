"""
Surface language: sorts, the two-layer AST, parsing, printing and sort checking.
"""

from .checker import check_char, check_meta, sort_check
from .parser import parse_formula, parse_meta, parse_sort, parse_theory
from .printer import print_formula, print_meta, print_theory
from .substitution import alpha_equivalent, substitute, substitute_all
from .theory import Axiom, Definition, Goal, Signature, SortedTheory, Theory

__all__ = [
    "Axiom",
    "Definition",
    "Goal",
    "Signature",
    "SortedTheory",
    "Theory",
    "alpha_equivalent",
    "check_char",
    "check_meta",
    "parse_formula",
    "parse_meta",
    "parse_sort",
    "parse_theory",
    "print_formula",
    "print_meta",
    "print_theory",
    "sort_check",
    "substitute",
    "substitute_all",
]
