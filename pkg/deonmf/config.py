"""
Run configuration for the checking pipeline.

Defaults live in code; the wall-clock budget can be overridden through the
``DEONMF_BUDGET`` environment variable and every field through the CLI.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, Mapping, Optional

from .errors import ConfigError
from .semantics.conditions import DEFAULT_CONDITIONS, ConditionSet
from .semantics.scope import Scope

BUDGET_ENV = "DEONMF_BUDGET"
DEFAULT_BUDGET_SECONDS = 60.0
DEFAULT_CELL_BUDGET = 1 << 20
DEFAULT_CEILING = Scope(2, 2, 2)


def default_budget(environ: Optional[Mapping[str, str]] = None) -> float:
    """Budget in seconds from ``DEONMF_BUDGET``, else the built-in default."""
    environ = os.environ if environ is None else environ
    raw = environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET_SECONDS
    try:
        value = float(raw)
    except ValueError as exc:
        raise ConfigError(f"{BUDGET_ENV}={raw!r} is not a number of seconds") from exc
    if value <= 0:
        raise ConfigError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class CheckerConfig:
    budget: float = field(default_factory=default_budget)
    deterministic: bool = True
    jobs: int = 1
    learning: bool = True
    symmetry_breaking: bool = False
    cell_budget: int = DEFAULT_CELL_BUDGET
    verify: bool = True
    conditions: ConditionSet = DEFAULT_CONDITIONS

    def __post_init__(self) -> None:
        if self.budget <= 0:
            raise ConfigError(f"budget must be positive, got {self.budget}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")
        if self.cell_budget < 1:
            raise ConfigError(f"cell budget must be positive, got {self.cell_budget}")

    @property
    def workers(self) -> int:
        """Worker processes actually used; deterministic runs stay single-worker."""
        return 1 if self.deterministic else self.jobs

    def with_conditions(self, enable: Iterable[str] = (), disable: Iterable[str] = ()) -> "CheckerConfig":
        return replace(self, conditions=self.conditions.toggled(enable, disable))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "budget": self.budget,
            "deterministic": self.deterministic,
            "jobs": self.jobs,
            "learning": self.learning,
            "symmetry_breaking": self.symmetry_breaking,
            "cell_budget": self.cell_budget,
            "verify": self.verify,
            "conditions": self.conditions.to_dict(),
        }


def load_scope(text: Optional[str], default: Optional[Scope] = None) -> Scope:
    """Parse a ``c=i,e=j,w=k`` option, falling back to ``default``."""
    if text is None:
        if default is None:
            raise ConfigError("a scope is required (--scope c=i,e=j,w=k)")
        return default
    return Scope.parse(text)
