"""
Pipeline facade: ground, solve, reconstruct and re-verify.

Every command of the CLI and every corpus entry goes through
:class:`Checker`. A satisfying assignment is turned back into an
interpretation, checked against the enabled frame conditions and re-evaluated
by the reference evaluator before it is reported; a disagreement raises
:class:`~deonmf.errors.VerificationError`.
"""

from __future__ import annotations

import logging
import time
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .config import CheckerConfig
from .errors import ConfigError, SolverTimeout, VerificationError
from .grounder.encoder import REFUTE, SATISFY, PropProblem, ground
from .grounder.reconstruct import reconstruct_model
from .report import CheckResult, ProblemSize, ValidityReport
from .semantics.canonical import canonical_form
from .semantics.conditions import frame_conditions_check
from .semantics.evaluator import Evaluator
from .semantics.frame import Interpretation
from .semantics.scope import Scope, scopes_up_to
from .solver.dpll import solve
from .solver.result import SolverStats, Verdict
from .surface import ast
from .surface.checker import sort_check
from .surface.parser import parse_theory
from .surface.theory import Axiom, Goal, SortedTheory

_LOGGER = logging.getLogger(__name__)

CONSISTENCY = "consistency"


def read_text(path: Union[str, Path]) -> str:
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read theory file {path}: {exc.strerror or exc}") from exc


def load_theory(path: Union[str, Path]) -> SortedTheory:
    """Read, parse and sort-check a ``.dl`` file."""
    theory = sort_check(parse_theory(read_text(path)))
    _LOGGER.info("Loaded %s: %d axioms, %d goals", path, len(theory.axioms), len(theory.goals))
    return theory


def resolve_goal(theory: SortedTheory, name: str) -> Goal:
    try:
        return theory.goal(name)
    except KeyError:
        known = ", ".join(goal.name for goal in theory.goals) or "none"
        raise ConfigError(f"unknown goal '{name}' (declared goals: {known})") from None


def _name_list(value: str) -> List[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def axioms_for(theory: SortedTheory, goal: Optional[Goal] = None) -> Tuple[Axiom, ...]:
    """Axioms a goal is checked under, honouring its ``axioms`` and ``without`` attributes."""
    if goal is None:
        return theory.axioms
    selected = goal.attribute("axioms", "all")
    names = None if selected == "all" else ([] if selected == "none" else _name_list(selected))
    try:
        return theory.theory.select_axioms(names, _name_list(goal.attribute("without", "")))
    except KeyError as exc:
        raise ConfigError(f"goal '{goal.name}' names unknown axiom {exc}") from None


class Checker:
    def __init__(self, theory: SortedTheory, config: Optional[CheckerConfig] = None) -> None:
        self.theory = theory
        self.config = config or CheckerConfig()

    def ground(
        self,
        formula: Optional[ast.MetaNode],
        mode: str,
        scope: Scope,
        axioms: Optional[Sequence[Axiom]] = None,
        deadline: Optional[float] = None,
    ) -> PropProblem:
        return ground(
            self.theory,
            formula,
            mode,
            scope,
            self.config.conditions,
            axioms=axioms,
            cell_budget=self.config.cell_budget,
            symmetry_breaking=self.config.symmetry_breaking,
            deadline=deadline,
        )

    def run(
        self,
        query: str,
        formula: Optional[ast.MetaNode],
        mode: str,
        scope: Scope,
        axioms: Optional[Sequence[Axiom]] = None,
        budget: Optional[float] = None,
    ) -> CheckResult:
        chosen = self.theory.axioms if axioms is None else tuple(axioms)
        deadline = time.monotonic() + (self.config.budget if budget is None else budget)
        try:
            problem = self.ground(formula, mode, scope, chosen, deadline)
        except SolverTimeout as exc:
            _LOGGER.warning("%s (%s) at %s: budget ran out while grounding", query, mode, scope)
            return CheckResult(query, mode, scope, Verdict.TIMEOUT, stats=SolverStats(elapsed=exc.elapsed))
        result = solve(
            problem,
            budget=max(0.0, deadline - time.monotonic()),
            deterministic=self.config.deterministic,
            learning=self.config.learning,
            jobs=self.config.jobs,
        )
        model = None
        if result.is_sat:
            raw = reconstruct_model(problem, result.assignment or {})
            if self.config.verify:
                self.verify(query, raw, formula, mode, chosen)
            model = canonical_form(raw)
        size = ProblemSize(problem.num_vars, problem.aux_count, len(problem.clauses))
        _LOGGER.info("%s (%s) at %s: %s", query, mode, scope, result.verdict.value)
        return CheckResult(query, mode, scope, result.verdict, model, result.stats, size)

    def verify(
        self,
        query: str,
        model: Interpretation,
        formula: Optional[ast.MetaNode],
        mode: str,
        axioms: Sequence[Axiom],
    ) -> None:
        """Re-check a reconstructed model with the reference evaluator."""
        violations = frame_conditions_check(model, self.config.conditions)
        if violations:
            _LOGGER.error("%s: model violates %s", query, violations[0])
            raise VerificationError(f"{query}: model violates frame condition {violations[0]}")
        evaluator = Evaluator(model, self.theory.definitions)
        for axiom in axioms:
            if not evaluator.meta(axiom.formula):
                _LOGGER.error("%s: model falsifies axiom %s", query, axiom.name)
                raise VerificationError(f"{query}: model falsifies axiom '{axiom.name}'")
        if formula is not None and evaluator.meta(formula) != (mode == SATISFY):
            _LOGGER.error("%s: evaluator disagrees with the %s verdict", query, mode)
            raise VerificationError(f"{query}: evaluator disagrees with the solver on the goal ({mode})")

    # Commands -------------------------------------------------------------

    def consistency(self, scope: Scope, axioms: Optional[Sequence[Axiom]] = None) -> CheckResult:
        """Search for a model of the axioms alone."""
        return self.run(CONSISTENCY, None, SATISFY, scope, axioms)

    def satisfy(self, goal: Goal, scope: Scope) -> CheckResult:
        return self.run(goal.name, goal.formula, SATISFY, scope, axioms_for(self.theory, goal))

    def countermodel(self, goal: Goal, scope: Scope) -> CheckResult:
        return self.run(goal.name, goal.formula, REFUTE, scope, axioms_for(self.theory, goal))

    def valid(
        self,
        goal: Goal,
        ceiling: Scope,
        axioms: Optional[Sequence[Axiom]] = None,
    ) -> ValidityReport:
        """Refute ``goal`` at every scope up to ``ceiling``, smallest first.

        The configured budget covers the whole deepening run; the search stops
        at the first countermodel or the first timeout.
        """
        chosen = axioms_for(self.theory, goal) if axioms is None else tuple(axioms)
        deadline = time.monotonic() + self.config.budget
        runs: List[CheckResult] = []
        for scope in scopes_up_to(ceiling):
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                runs.append(CheckResult(goal.name, REFUTE, scope, Verdict.TIMEOUT, stats=SolverStats()))
                break
            _LOGGER.debug("Deepening %s: trying %s with %.1fs left", goal.name, scope, remaining)
            run = self.run(goal.name, goal.formula, REFUTE, scope, chosen, budget=remaining)
            runs.append(run)
            if run.verdict is not Verdict.UNSAT:
                break
        report = ValidityReport(goal.name, ceiling, tuple(runs))
        level = logging.WARNING if report.timed_out else logging.INFO
        _LOGGER.log(level, "%s: %s", goal.name, report.summary())
        return report
