"""
Solver outcomes and search statistics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional


class Verdict(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class SolverStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    learned: int = 0
    elapsed: float = 0.0

    def __add__(self, other: "SolverStats") -> "SolverStats":
        return SolverStats(
            decisions=self.decisions + other.decisions,
            propagations=self.propagations + other.propagations,
            conflicts=self.conflicts + other.conflicts,
            learned=self.learned + other.learned,
            elapsed=max(self.elapsed, other.elapsed),
        )

    def to_payload(self, include_timing: bool = True) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "decisions": self.decisions,
            "propagations": self.propagations,
            "conflicts": self.conflicts,
            "learned": self.learned,
        }
        if include_timing:
            payload["elapsed"] = round(self.elapsed, 6)
        return payload

    def lines(self, include_timing: bool = True) -> List[str]:
        """``key=value`` lines."""
        return [f"{key}={value}" for key, value in self.to_payload(include_timing).items()]


@dataclass(frozen=True)
class SolverResult:
    verdict: Verdict
    assignment: Optional[Mapping[int, bool]] = field(default=None, compare=False)
    stats: SolverStats = field(default_factory=SolverStats)

    @classmethod
    def sat(cls, assignment: Mapping[int, bool], stats: SolverStats) -> "SolverResult":
        return cls(Verdict.SAT, dict(assignment), stats)

    @classmethod
    def unsat(cls, stats: SolverStats) -> "SolverResult":
        return cls(Verdict.UNSAT, None, stats)

    @classmethod
    def timeout(cls, stats: SolverStats) -> "SolverResult":
        return cls(Verdict.TIMEOUT, None, stats)

    @property
    def is_sat(self) -> bool:
        return self.verdict is Verdict.SAT

    @property
    def is_unsat(self) -> bool:
        return self.verdict is Verdict.UNSAT

    @property
    def is_timeout(self) -> bool:
        return self.verdict is Verdict.TIMEOUT

    @property
    def elapsed(self) -> float:
        return self.stats.elapsed
