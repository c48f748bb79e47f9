"""
DPLL search with two-watched-literal propagation.

Two backtracking regimes share the propagation core:

* chronological: on conflict, undo to the most recent unflipped decision and
  try its opposite polarity;
* clause learning: derive the first-UIP clause of the conflict, add it to the
  clause database and jump back to its second-highest level.

Decisions follow the static variable order (lowest id first, negative
polarity first), so a run is fully reproducible. Variables that occur in no
clause are never branched on and end up false.
"""

from __future__ import annotations

import logging
import time
from collections import defaultdict
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

from ..errors import VerificationError
from .result import SolverResult, SolverStats, Verdict

_LOGGER = logging.getLogger(__name__)

_CHECK_EVERY = 64


class Solver:
    def __init__(
        self,
        num_vars: int,
        clauses: Iterable[Sequence[int]],
        *,
        learning: bool = True,
        budget: Optional[float] = None,
    ) -> None:
        self.num_vars = num_vars
        self.learning = learning
        self.budget = budget
        self.values: List[int] = [0] * (num_vars + 1)
        self.levels: List[int] = [0] * (num_vars + 1)
        self.reasons: List[Optional[int]] = [None] * (num_vars + 1)
        self.trail: List[int] = []
        self.limits: List[int] = []
        self.flipped: List[bool] = []
        self.qhead = 0
        self.clauses: List[List[int]] = []
        self.watches: Dict[int, List[int]] = defaultdict(list)
        self.units: List[int] = []
        self.original: List[Sequence[int]] = []
        self.has_empty = False
        self.decisions = 0
        self.propagations = 0
        self.conflicts = 0
        self.learned = 0
        occurring = set()
        for clause in clauses:
            self.original.append(clause)
            self._add_input(clause)
            occurring.update(abs(lit) for lit in clause)
        self.order = sorted(occurring)
        self.position = {var: index for index, var in enumerate(self.order)}
        self.cursor = 0

    # Clause database ------------------------------------------------------

    def _add_input(self, clause: Sequence[int]) -> None:
        lits: List[int] = []
        for lit in clause:
            if -lit in lits:
                return
            if lit not in lits:
                lits.append(lit)
        if not lits:
            self.has_empty = True
        elif len(lits) == 1:
            self.units.append(lits[0])
        else:
            self._attach(lits)

    def _attach(self, lits: List[int]) -> int:
        index = len(self.clauses)
        self.clauses.append(lits)
        self.watches[lits[0]].append(index)
        self.watches[lits[1]].append(index)
        return index

    # Assignment -----------------------------------------------------------

    def value(self, lit: int) -> int:
        value = self.values[abs(lit)]
        return value if lit > 0 else -value

    def _enqueue(self, lit: int, reason: Optional[int]) -> None:
        var = abs(lit)
        self.values[var] = 1 if lit > 0 else -1
        self.levels[var] = len(self.limits)
        self.reasons[var] = reason
        self.trail.append(lit)

    def _cancel_level(self) -> None:
        start = self.limits.pop()
        self.flipped.pop()
        for lit in self.trail[start:]:
            var = abs(lit)
            self.values[var] = 0
            self.reasons[var] = None
            position = self.position.get(var)
            if position is not None and position < self.cursor:
                self.cursor = position
        del self.trail[start:]
        self.qhead = len(self.trail)

    def _backjump(self, level: int) -> None:
        while len(self.limits) > level:
            self._cancel_level()

    def _next_var(self) -> Optional[int]:
        while self.cursor < len(self.order) and self.values[self.order[self.cursor]] != 0:
            self.cursor += 1
        return self.order[self.cursor] if self.cursor < len(self.order) else None

    # Propagation ----------------------------------------------------------

    def propagate(self) -> Optional[int]:
        """Run unit propagation; return the index of a falsified clause, if any."""
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watchers = self.watches[false_lit]
            kept: List[int] = []
            conflict: Optional[int] = None
            for index in watchers:
                if conflict is not None:
                    kept.append(index)
                    continue
                clause = self.clauses[index]
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self.value(first) == 1:
                    kept.append(index)
                    continue
                for k in range(2, len(clause)):
                    if self.value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], false_lit
                        self.watches[clause[1]].append(index)
                        break
                else:
                    kept.append(index)
                    if self.value(first) == -1:
                        conflict = index
                    else:
                        self._enqueue(first, index)
                        self.propagations += 1
            self.watches[false_lit] = kept
            if conflict is not None:
                return conflict
        return None

    def _assert_units(self) -> bool:
        if self.has_empty:
            return False
        for lit in self.units:
            value = self.value(lit)
            if value == -1:
                return False
            if value == 0:
                self._enqueue(lit, None)
        return True

    def propagate_only(self) -> Optional[FrozenSet[int]]:
        """Literals implied at level 0, or ``None`` if propagation conflicts."""
        if not self._assert_units() or self.propagate() is not None:
            return None
        return frozenset(self.trail)

    # Conflict handling ----------------------------------------------------

    def _flip(self) -> bool:
        while self.limits and self.flipped[-1]:
            self._cancel_level()
        if not self.limits:
            return False
        decision = self.trail[self.limits[-1]]
        self._cancel_level()
        self.limits.append(len(self.trail))
        self.flipped.append(True)
        self._enqueue(-decision, None)
        return True

    def _learn(self, conflict: int) -> None:
        level = len(self.limits)
        seen = set()
        learnt: List[int] = []
        pending = 0
        clause: Sequence[int] = self.clauses[conflict]
        implied: Optional[int] = None
        index = len(self.trail) - 1
        while True:
            for lit in clause:
                if lit == implied:
                    continue
                var = abs(lit)
                if var in seen or self.levels[var] == 0:
                    continue
                seen.add(var)
                if self.levels[var] >= level:
                    pending += 1
                else:
                    learnt.append(lit)
            while abs(self.trail[index]) not in seen:
                index -= 1
            implied = self.trail[index]
            index -= 1
            pending -= 1
            if pending == 0:
                break
            reason = self.reasons[abs(implied)]
            assert reason is not None
            clause = self.clauses[reason]
        learnt.insert(0, -implied)
        target = 0
        if len(learnt) > 1:
            best = max(range(1, len(learnt)), key=lambda i: self.levels[abs(learnt[i])])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            target = self.levels[abs(learnt[1])]
        self._backjump(target)
        self.learned += 1
        if len(learnt) == 1:
            self._enqueue(learnt[0], None)
        else:
            self._enqueue(learnt[0], self._attach(learnt))

    # Search ---------------------------------------------------------------

    def solve(self) -> SolverResult:
        start = time.monotonic()
        deadline = None if self.budget is None else start + self.budget
        ticks = 0
        if not self._assert_units():
            return SolverResult.unsat(self._stats(start))
        while True:
            conflict = self.propagate()
            if conflict is not None:
                self.conflicts += 1
                if not self.limits:
                    return SolverResult.unsat(self._stats(start))
                if deadline is not None and time.monotonic() >= deadline:
                    return SolverResult.timeout(self._stats(start))
                if self.learning:
                    self._learn(conflict)
                elif not self._flip():
                    return SolverResult.unsat(self._stats(start))
                continue
            ticks += 1
            if deadline is not None and ticks % _CHECK_EVERY == 0 and time.monotonic() >= deadline:
                return SolverResult.timeout(self._stats(start))
            var = self._next_var()
            if var is None:
                assignment = {v: self.values[v] == 1 for v in range(1, self.num_vars + 1)}
                self._verify(assignment)
                return SolverResult.sat(assignment, self._stats(start))
            self.decisions += 1
            self.limits.append(len(self.trail))
            self.flipped.append(False)
            self._enqueue(-var, None)

    def _verify(self, assignment: Dict[int, bool]) -> None:
        for clause in self.original:
            if not any(assignment.get(abs(lit), False) == (lit > 0) for lit in clause):
                _LOGGER.error("Solver produced an assignment violating clause %s", list(clause))
                raise VerificationError(f"assignment violates clause {list(clause)}")

    def _stats(self, start: float) -> SolverStats:
        return SolverStats(
            decisions=self.decisions,
            propagations=self.propagations,
            conflicts=self.conflicts,
            learned=self.learned,
            elapsed=time.monotonic() - start,
        )


def solve(
    problem,
    budget: Optional[float] = None,
    deterministic: bool = True,
    *,
    learning: bool = True,
    jobs: int = 1,
) -> SolverResult:
    """Decide ``problem`` (anything with ``num_vars`` and ``clauses``).

    With ``jobs > 1`` and ``deterministic`` off the search is split into cubes
    solved by worker processes.
    """
    if jobs > 1 and not deterministic:
        from .parallel import solve_parallel

        return solve_parallel(problem, jobs=jobs, budget=budget, learning=learning)
    result = Solver(problem.num_vars, problem.clauses, learning=learning, budget=budget).solve()
    level = logging.WARNING if result.verdict is Verdict.TIMEOUT else logging.DEBUG
    _LOGGER.log(level, "Solver verdict %s (%s)", result.verdict.value, " ".join(result.stats.lines()))
    return result
