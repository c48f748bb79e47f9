"""
Model enumeration by blocking clauses.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional

from ..errors import SolverTimeout
from ..grounder.encoder import PropProblem
from ..grounder.reconstruct import assignment_for, reconstruct_model
from ..semantics.canonical import orbit
from .dpll import Solver

_LOGGER = logging.getLogger(__name__)


def _blocking_clause(assignment: Dict[int, bool], primary: int) -> tuple:
    return tuple(-var if assignment[var] else var for var in range(1, primary + 1))


def enumerate_models(
    problem: PropProblem,
    limit: int,
    canonicalize: bool = False,
    *,
    budget: Optional[float] = None,
    learning: bool = True,
) -> List[Dict[int, bool]]:
    """Up to ``limit`` satisfying assignments with distinct primary parts.

    With ``canonicalize`` every found model also blocks all of its renamed
    copies, so the result holds one assignment per isomorphism class.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    primary = problem.primary_count
    blocking: List[tuple] = []
    models: List[Dict[int, bool]] = []
    remaining = budget
    while len(models) < limit:
        solver = Solver(problem.num_vars, problem.clauses + tuple(blocking), learning=learning, budget=remaining)
        result = solver.solve()
        if result.is_timeout:
            raise SolverTimeout(result.elapsed if budget is None else budget)
        if remaining is not None:
            remaining = max(0.0, remaining - result.elapsed)
        if not result.is_sat:
            break
        assignment = dict(result.assignment or {})
        models.append(assignment)
        if canonicalize:
            model = reconstruct_model(problem, assignment)
            for renamed in orbit(model):
                blocking.append(_blocking_clause(assignment_for(problem, renamed), primary))
        else:
            blocking.append(_blocking_clause(assignment, primary))
    _LOGGER.debug("Enumerated %d model(s)%s", len(models), " up to isomorphism" if canonicalize else "")
    return models
