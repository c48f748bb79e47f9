"""
Satisfying assignments <-> interpretations.
"""

from __future__ import annotations

from typing import Dict, Mapping

from ..semantics.frame import Interpretation
from .encoder import PropProblem


def reconstruct_model(problem: PropProblem, assignment: Mapping[int, bool]) -> Interpretation:
    """Read the frame and the constant tables off the primary variables.

    Raises :class:`~deonmf.errors.IncompleteAssignment` when a primary variable
    is unassigned or a selector group does not pick exactly one value.
    """
    return problem.varmap.interpretation(assignment)


def assignment_for(problem: PropProblem, model: Interpretation) -> Dict[int, bool]:
    return problem.varmap.assignment(model)
