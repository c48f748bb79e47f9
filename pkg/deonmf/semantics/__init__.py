"""
Finite interpretations and the reference evaluator.
"""

from .canonical import canonical_form, isomorphic
from .conditions import DEFAULT_CONDITIONS, ConditionSet, Violation, frame_conditions_check
from .evaluator import Evaluator, eval_char, eval_meta
from .frame import Frame, Interpretation, Table
from .scope import Scope
from .universe import value_universe

__all__ = [
    "DEFAULT_CONDITIONS",
    "ConditionSet",
    "Evaluator",
    "Frame",
    "Interpretation",
    "Scope",
    "Table",
    "Violation",
    "canonical_form",
    "eval_char",
    "eval_meta",
    "frame_conditions_check",
    "isomorphic",
    "value_universe",
]
