"""
End-to-end execution of the manifest.

Every entry runs through the same :class:`~deonmf.check.Checker` the CLI
uses. Failures of one entry (mismatch, timeout, scope budget, internal error)
are recorded in its report line and never stop the run.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Iterable, List, Optional, Sequence

from ..check import Checker
from ..config import CheckerConfig
from ..errors import ConfigError, DeonError, ScopeTooLarge, SolverTimeout
from ..grounder.encoder import REFUTE, SATISFY
from ..report import CorpusReport, EntryReport, Outcome
from ..semantics.scope import Scope
from ..solver.result import Verdict
from ..surface.theory import Goal, SortedTheory
from .manifest import NECESSARY_PREMISE, CorpusEntry

_LOGGER = logging.getLogger(__name__)


def run_corpus(
    theory: SortedTheory,
    entries: Sequence[CorpusEntry],
    config: Optional[CheckerConfig] = None,
    budget: Optional[float] = None,
    only: Optional[Iterable[str]] = None,
) -> CorpusReport:
    """Run ``entries`` (optionally the ``only`` subset) and report in manifest order."""
    config = config or CheckerConfig()
    config.conditions.require_load_bearing()
    if budget is not None:
        config = replace(config, budget=budget)
    selected = list(entries)
    if only is not None:
        wanted = list(only)
        known = {entry.name for entry in selected}
        missing = [name for name in wanted if name not in known]
        if missing:
            raise ConfigError(f"unknown corpus entr{'y' if len(missing) == 1 else 'ies'}: {', '.join(missing)}")
        selected = [entry for entry in selected if entry.name in wanted]

    if config.workers > 1 and len(selected) > 1:
        # Entries run in separate processes; each one solves single-worker.
        entry_config = replace(config, jobs=1)
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            futures = [executor.submit(run_entry, theory, entry, entry_config) for entry in selected]
            reports = [future.result() for future in futures]
    else:
        reports = [run_entry(theory, entry, config) for entry in selected]
    report = CorpusReport(tuple(reports))
    _LOGGER.info("Corpus finished: %s", ", ".join(f"{n} {k}" for k, n in report.totals().items() if n))
    return report


def run_entry(theory: SortedTheory, entry: CorpusEntry, config: CheckerConfig) -> EntryReport:
    start = time.monotonic()
    checker = Checker(theory, config)
    try:
        axioms = theory.theory.select_axioms(entry.axioms, entry.without)
        if entry.deepening:
            report = _deepen(checker, entry, axioms)
        else:
            report = _single(checker, entry, axioms)
    except (SolverTimeout, ScopeTooLarge) as exc:
        report = _timed_out(entry, None, str(exc))
    except DeonError as exc:
        _LOGGER.error("%s: %s", entry.name, exc)
        report = EntryReport(entry.name, entry.kind, entry.expect, Outcome.ERROR, "error", entry.anchor, detail=str(exc))
    report = replace(report, elapsed=time.monotonic() - start)
    level = logging.INFO if report.outcome is Outcome.PASS else logging.WARNING
    _LOGGER.log(level, "%s: %s (%s)", entry.name, report.outcome.value, report.actual)
    return report


def _single(checker: Checker, entry: CorpusEntry, axioms) -> EntryReport:
    mode = SATISFY if entry.satisfy else REFUTE
    result = checker.run(entry.name, entry.formula, mode, entry.scope, axioms)
    if result.timed_out:
        return _timed_out(entry, None, f"no verdict at {entry.scope}")
    if entry.satisfy:
        actual = "model found" if result.found_model else "no model"
    else:
        actual = "countermodel" if result.found_model else "no countermodel"
    return _judge(entry, result.verdict, actual, entry.scope, result.model)


def _deepen(checker: Checker, entry: CorpusEntry, axioms) -> EntryReport:
    report = checker.valid(Goal(entry.name, entry.formula), entry.scope, axioms)
    found = report.countermodel
    if found is not None:
        return _judge(entry, Verdict.SAT, report.summary(), found.scope, found.model)
    if not report.exhaustive:
        return _timed_out(entry, report.largest_completed, report.summary())
    return _judge(entry, Verdict.UNSAT, report.summary(), entry.scope, None)


def _judge(entry: CorpusEntry, verdict: Verdict, actual: str, scope: Scope, model) -> EntryReport:
    if verdict.value == entry.expect:
        outcome, detail = Outcome.PASS, ""
    elif entry.kind == NECESSARY_PREMISE:
        outcome, detail = Outcome.INCONCLUSIVE, f"no countermodel up to {entry.scope}"
    else:
        outcome, detail = Outcome.FAIL, f"expected {entry.expect}, got {verdict.value}"
    return EntryReport(entry.name, entry.kind, entry.expect, outcome, actual, entry.anchor, scope, model, detail=detail)


def _timed_out(entry: CorpusEntry, scope: Optional[Scope], detail: str) -> EntryReport:
    if entry.kind == NECESSARY_PREMISE:
        outcome = Outcome.INCONCLUSIVE
    elif entry.allow_timeout:
        outcome = Outcome.TIMEOUT
    else:
        outcome = Outcome.FAIL
    return EntryReport(entry.name, entry.kind, entry.expect, outcome, "timeout", entry.anchor, scope, detail=detail)


def failed_entries(report: CorpusReport) -> List[str]:
    return [entry.name for entry in report.entries if entry.outcome in (Outcome.FAIL, Outcome.ERROR)]
