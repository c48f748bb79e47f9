"""
Result records shared by the check facade, the corpus runner and the CLI.

Every record renders to a JSON-ready ``to_payload()`` dictionary and to plain
text. Timing fields are left out of payloads when ``include_timing`` is off so
deterministic runs serialize byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .semantics.frame import Interpretation
from .semantics.render import model_payload, render_text
from .semantics.scope import Scope
from .solver.result import SolverStats, Verdict


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


@dataclass(frozen=True)
class ProblemSize:
    variables: int
    auxiliary: int
    clauses: int

    def to_payload(self) -> Dict[str, int]:
        return {"variables": self.variables, "auxiliary": self.auxiliary, "clauses": self.clauses}


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one ground-and-solve run at a single scope."""

    query: str
    mode: str
    scope: Scope
    verdict: Verdict
    model: Optional[Interpretation] = field(default=None, compare=False)
    stats: SolverStats = field(default_factory=SolverStats, compare=False)
    size: Optional[ProblemSize] = field(default=None, compare=False)

    @property
    def found_model(self) -> bool:
        return self.verdict is Verdict.SAT

    @property
    def timed_out(self) -> bool:
        return self.verdict is Verdict.TIMEOUT

    def to_payload(self, include_timing: bool = True) -> Dict[str, Any]:
        return {
            "query": self.query,
            "mode": self.mode,
            "scope": self.scope.to_payload(),
            "verdict": self.verdict.value,
            "stats": self.stats.to_payload(include_timing),
            "problem": self.size.to_payload() if self.size else None,
            "model": model_payload(self.model) if self.model is not None else None,
        }

    def to_json(self, include_timing: bool = True) -> str:
        return to_json(self.to_payload(include_timing))

    def render(self, include_timing: bool = True) -> str:
        lines = [f"{self.query}: {self.mode} at {self.scope} -> {self.verdict.value}"]
        if self.size:
            lines.append(
                f"problem: {self.size.variables} variables ({self.size.auxiliary} auxiliary), {self.size.clauses} clauses"
            )
        lines.extend(self.stats.lines(include_timing))
        if self.model is not None:
            lines.append(render_text(self.model).rstrip("\n"))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ValidityReport:
    """Refutation searches over every scope up to a ceiling, stopping at the first countermodel."""

    query: str
    ceiling: Scope
    runs: Tuple[CheckResult, ...]

    @property
    def countermodel(self) -> Optional[CheckResult]:
        return next((run for run in self.runs if run.found_model), None)

    @property
    def timed_out(self) -> bool:
        return any(run.timed_out for run in self.runs)

    @property
    def completed(self) -> Tuple[Scope, ...]:
        return tuple(run.scope for run in self.runs if run.verdict is Verdict.UNSAT)

    @property
    def largest_completed(self) -> Optional[Scope]:
        completed = self.completed
        return completed[-1] if completed else None

    @property
    def exhaustive(self) -> bool:
        """True when every scope up to the ceiling was refuted without a countermodel."""
        return self.countermodel is None and not self.timed_out and self.largest_completed == self.ceiling

    def summary(self) -> str:
        found = self.countermodel
        if found is not None:
            return f"countermodel at {found.scope}"
        largest = self.largest_completed
        if self.exhaustive:
            return f"bounded-valid up to {self.ceiling}"
        if largest is None:
            return "timeout before any scope completed"
        return f"bounded-valid up to {largest} (timeout above)"

    def to_payload(self, include_timing: bool = True) -> Dict[str, Any]:
        largest = self.largest_completed
        return {
            "query": self.query,
            "ceiling": self.ceiling.to_payload(),
            "summary": self.summary(),
            "exhaustive": self.exhaustive,
            "largest_completed": largest.to_payload() if largest else None,
            "runs": [run.to_payload(include_timing) for run in self.runs],
        }

    def to_json(self, include_timing: bool = True) -> str:
        return to_json(self.to_payload(include_timing))

    def render(self, include_timing: bool = True) -> str:
        lines = [f"{self.query}: {self.summary()}"]
        for run in self.runs:
            lines.append(f"  {run.scope}: {run.verdict.value}")
        found = self.countermodel
        if found is not None and found.model is not None:
            lines.append(render_text(found.model).rstrip("\n"))
        return "\n".join(lines) + "\n"


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    TIMEOUT = "timeout"
    ERROR = "error"


@dataclass(frozen=True)
class EntryReport:
    name: str
    kind: str
    expect: str
    outcome: Outcome
    actual: str
    anchor: str
    scope: Optional[Scope] = None
    model: Optional[Interpretation] = field(default=None, compare=False)
    elapsed: float = field(default=0.0, compare=False)
    detail: str = ""

    def to_payload(self, include_timing: bool = True) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "name": self.name,
            "kind": self.kind,
            "expect": self.expect,
            "outcome": self.outcome.value,
            "actual": self.actual,
            "anchor": self.anchor,
            "scope": self.scope.to_payload() if self.scope else None,
            "model": model_payload(self.model) if self.model is not None else None,
            "detail": self.detail,
        }
        if include_timing:
            payload["elapsed"] = round(self.elapsed, 6)
        return payload

    def line(self, include_timing: bool = True) -> str:
        scope = str(self.scope) if self.scope else "-"
        timing = f" {self.elapsed:.2f}s" if include_timing else ""
        detail = f" ({self.detail})" if self.detail else ""
        return f"{self.outcome.value.upper():<12} {self.name} [{self.kind}] {scope}: {self.actual}{timing}{detail}"


@dataclass(frozen=True)
class CorpusReport:
    entries: Tuple[EntryReport, ...]

    def count(self, outcome: Outcome) -> int:
        return sum(1 for entry in self.entries if entry.outcome is outcome)

    @property
    def ok(self) -> bool:
        """No entry failed or errored; inconclusive and tolerated timeouts do not count against a run."""
        return not any(entry.outcome in (Outcome.FAIL, Outcome.ERROR) for entry in self.entries)

    def totals(self) -> Dict[str, int]:
        return {outcome.value: self.count(outcome) for outcome in Outcome}

    def to_payload(self, include_timing: bool = True) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "totals": self.totals(),
            "entries": [entry.to_payload(include_timing) for entry in self.entries],
        }

    def to_json(self, include_timing: bool = True) -> str:
        return to_json(self.to_payload(include_timing))

    def render(self, include_timing: bool = True) -> str:
        lines: List[str] = [entry.line(include_timing) for entry in self.entries]
        for entry in self.entries:
            if entry.model is not None:
                lines.append(f"--- {entry.name}")
                lines.append(render_text(entry.model).rstrip("\n"))
        totals = ", ".join(f"{count} {name}" for name, count in self.totals().items() if count)
        lines.append(f"{len(self.entries)} entries: {totals}")
        return "\n".join(lines) + "\n"
