"""
Corpus entries: goal blocks of the manifest read as typed records.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple, Union

from ..errors import ConfigError
from ..semantics.scope import Scope
from ..surface import ast
from ..surface.checker import sort_check
from ..surface.parser import parse_theory
from ..surface.theory import Goal, SortedTheory

SATISFIABLE = "satisfiable"
COUNTERMODEL = "countermodel"
BOUNDED_VALID = "bounded-valid"
ENTAILED = "entailed"
NECESSARY_PREMISE = "necessary-premise"
KINDS = (SATISFIABLE, COUNTERMODEL, BOUNDED_VALID, ENTAILED, NECESSARY_PREMISE)

EXPECTATIONS = ("sat", "unsat")

THEORY_FILE = "gewirth.dl"
MANIFEST_FILE = "manifest.dl"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    formula: ast.MetaNode
    kind: str
    expect: str
    scope: Scope
    anchor: str
    axioms: Optional[Tuple[str, ...]] = None
    without: Tuple[str, ...] = ()
    allow_timeout: bool = False
    reconstructed: bool = False

    @property
    def deepening(self) -> bool:
        """Entries that search every scope up to theirs rather than one scope.

        Refutation entries allowed to time out deepen too, so a timeout still
        reports the largest scope that completed.
        """
        if self.kind in (BOUNDED_VALID, NECESSARY_PREMISE):
            return True
        return self.allow_timeout and not self.satisfy

    @property
    def satisfy(self) -> bool:
        return self.kind == SATISFIABLE

    @classmethod
    def from_goal(cls, goal: Goal) -> "CorpusEntry":
        kind = _required(goal, "kind")
        if kind not in KINDS:
            raise ConfigError(f"entry '{goal.name}': unknown kind '{kind}' (known: {', '.join(KINDS)})")
        expect = goal.attribute("expect", "sat" if kind in (SATISFIABLE, COUNTERMODEL, NECESSARY_PREMISE) else "unsat")
        if expect not in EXPECTATIONS:
            raise ConfigError(f"entry '{goal.name}': expect must be sat or unsat, got '{expect}'")
        try:
            scope = Scope.parse(_required(goal, "scope"))
        except ConfigError as exc:
            raise ConfigError(f"entry '{goal.name}': {exc}") from exc
        if kind == NECESSARY_PREMISE and not goal.attribute("without"):
            raise ConfigError(f"entry '{goal.name}': necessary-premise entries name the axioms to drop with 'without'")
        selected = goal.attribute("axioms", "all")
        return cls(
            name=goal.name,
            formula=goal.formula,
            kind=kind,
            expect=expect,
            scope=scope,
            anchor=_required(goal, "anchor"),
            axioms=None if selected == "all" else _names(selected),
            without=_names(goal.attribute("without", "")),
            allow_timeout=_flag(goal, "allow-timeout"),
            reconstructed=_flag(goal, "reconstructed"),
        )


def _required(goal: Goal, key: str) -> str:
    value = goal.attribute(key)
    if value is None:
        raise ConfigError(f"entry '{goal.name}' lacks the '{key}' attribute")
    return value


def _names(value: str) -> Tuple[str, ...]:
    if value == "none":
        return ()
    return tuple(part.strip() for part in value.split(",") if part.strip())


def _flag(goal: Goal, key: str) -> bool:
    value = goal.attribute(key, "false")
    if value not in ("true", "false"):
        raise ConfigError(f"entry '{goal.name}': {key} must be true or false, got '{value}'")
    return value == "true"


def bundled_text(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")


def _read(path: Optional[Union[str, Path]], bundled: str) -> str:
    if path is None:
        return bundled_text(bundled)
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_corpus(
    theory_path: Optional[Union[str, Path]] = None,
    manifest_path: Optional[Union[str, Path]] = None,
) -> Tuple[SortedTheory, List[CorpusEntry]]:
    """Parse the theory, read the manifest on top of it and sort-check both."""
    theory = parse_theory(_read(theory_path, THEORY_FILE))
    combined = sort_check(parse_theory(_read(manifest_path, MANIFEST_FILE), base=theory))
    entries = manifest_entries(combined)
    declared = {axiom.name for axiom in combined.axioms}
    for entry in entries:
        unknown = sorted((set(entry.axioms or ()) | set(entry.without)) - declared)
        if unknown:
            raise ConfigError(f"entry '{entry.name}' names unknown axiom(s): {', '.join(unknown)}")
    return combined, entries


def manifest_entries(theory: SortedTheory) -> List[CorpusEntry]:
    """Entries in declaration order; goals without a ``kind`` are not entries."""
    return [CorpusEntry.from_goal(goal) for goal in theory.goals if goal.attribute("kind") is not None]
