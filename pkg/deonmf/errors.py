"""
Exception hierarchy shared by every stage of the deon-mf pipeline.

Each stage raises a subclass of :class:`DeonError`; the command line front end
maps the families below onto exit codes (usage/parse/sort errors, budget
errors, internal verification failures).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Optional


@dataclass(frozen=True)
class Location:
    """Line/column position inside a theory file (both 1-based)."""

    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class DeonError(Exception):
    """Root of every error raised by the package."""


# Surface language ---------------------------------------------------------


class ParseError(DeonError):
    """Raised when a theory file cannot be tokenized or parsed."""

    def __init__(self, message: str, location: Location, expected: FrozenSet[str] = frozenset()) -> None:
        self.location = location
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{location}: {message}{detail}")

    @property
    def line(self) -> int:
        return self.location.line

    @property
    def column(self) -> int:
        return self.location.column


class DuplicateName(DeonError):
    """A constant, definition, axiom or goal name was declared twice."""


class UnknownSort(DeonError):
    """A sort name does not resolve to a base sort or a declared alias."""


class SortError(DeonError):
    """Base class for sort-checking failures."""

    def __init__(self, message: str, location: Optional[Location] = None) -> None:
        self.location = location
        prefix = f"{location}: " if location else ""
        super().__init__(f"{prefix}{message}")


class SortMismatch(SortError):
    def __init__(self, expected: object, found: object, location: Optional[Location] = None) -> None:
        self.expected = expected
        self.found = found
        super().__init__(f"sort mismatch: expected {expected}, found {found}", location)


class UnboundVariable(SortError):
    def __init__(self, name: str, location: Optional[Location] = None) -> None:
        self.name = name
        super().__init__(f"unbound name '{name}'", location)


class ArityError(SortError):
    """A non-function term was applied to an argument."""


# Semantics / grounding ----------------------------------------------------


class UnsupportedSort(DeonError):
    """A sort has no finite enumeration (or no table encoding) at a scope."""


class ScopeTooLarge(DeonError):
    """The expanded M/P universes exceed the configured cell budget."""


class IncompleteAssignment(DeonError):
    """A model reconstruction was attempted from a partial assignment."""


class VerificationError(DeonError):
    """A solver model was rejected by the reference evaluator."""


# Solving / configuration --------------------------------------------------


class SolverTimeout(DeonError):
    """The wall-clock budget ran out before the search finished."""

    def __init__(self, elapsed: float) -> None:
        self.elapsed = elapsed
        super().__init__(f"solver budget exhausted after {elapsed:.2f}s")


class ConfigError(DeonError):
    """Raised for malformed scopes, unknown condition names and similar."""
