"""
Theory containers: signature, definitions, axioms and goals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from ..errors import DuplicateName, Location
from .ast import CharFormula, MetaFormula
from .sorts import C, E, M, W, Fun, Sort

AGENT = "Agent"
WORLD = "World"

BUILTIN_CONSTANTS: Tuple[Tuple[str, Sort], ...] = (
    (AGENT, Fun(C, E)),
    (WORLD, Fun(C, W)),
)


@dataclass(frozen=True)
class Signature:
    """Typed non-logical constants; ``Agent`` and ``World`` are always present."""

    entries: Tuple[Tuple[str, Sort], ...] = BUILTIN_CONSTANTS

    def __post_init__(self) -> None:
        names = [name for name, _ in self.entries]
        for builtin, _ in BUILTIN_CONSTANTS:
            if builtin not in names:
                raise ValueError(f"signature lacks built-in constant {builtin}")
        if len(set(names)) != len(names):
            raise DuplicateName("duplicate constant in signature")

    def declare(self, name: str, sort: Sort) -> "Signature":
        if name in self:
            raise DuplicateName(f"constant '{name}' already declared")
        return Signature(self.entries + ((name, sort),))

    def __contains__(self, name: object) -> bool:
        return any(name == entry for entry, _ in self.entries)

    def __getitem__(self, name: str) -> Sort:
        for entry, sort in self.entries:
            if entry == name:
                return sort
        raise KeyError(name)

    def __iter__(self) -> Iterator[str]:
        return (name for name, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self) -> Iterable[Tuple[str, Sort]]:
        return iter(self.entries)

    def user_constants(self) -> Tuple[Tuple[str, Sort], ...]:
        builtin = {name for name, _ in BUILTIN_CONSTANTS}
        return tuple((name, sort) for name, sort in self.entries if name not in builtin)


@dataclass(frozen=True)
class Definition:
    """A named abbreviation ``NAME(params) := body``; expanded during grounding."""

    name: str
    params: Tuple[Tuple[str, Sort], ...]
    body: CharFormula
    loc: Optional[Location] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Axiom:
    name: str
    formula: MetaFormula
    loc: Optional[Location] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Goal:
    """A named meta formula with free-form ``[key = value]`` attributes."""

    name: str
    formula: MetaFormula
    attributes: Tuple[Tuple[str, str], ...] = ()
    loc: Optional[Location] = field(default=None, compare=False, repr=False)

    def attribute(self, key: str, default: Optional[str] = None) -> Optional[str]:
        for name, value in self.attributes:
            if name == key:
                return value
        return default

    @property
    def expect(self) -> Optional[str]:
        return self.attribute("expect")

@dataclass(frozen=True)
class Theory:
    signature: Signature = field(default_factory=Signature)
    aliases: Tuple[Tuple[str, Sort], ...] = ()
    definitions: Tuple[Definition, ...] = ()
    axioms: Tuple[Axiom, ...] = ()
    goals: Tuple[Goal, ...] = ()

    @property
    def alias_map(self) -> Dict[str, Sort]:
        return dict(self.aliases)

    def goal(self, name: str) -> Goal:
        for goal in self.goals:
            if goal.name == name:
                return goal
        raise KeyError(name)

    def axiom(self, name: str) -> Axiom:
        for axiom in self.axioms:
            if axiom.name == name:
                return axiom
        raise KeyError(name)

    def select_axioms(self, names: Optional[Iterable[str]] = None, without: Iterable[str] = ()) -> Tuple[Axiom, ...]:
        """Axioms restricted to ``names`` (all when ``None``) minus ``without``."""
        excluded = set(without)
        wanted = None if names is None else list(names)
        for name in list(excluded) + (wanted or []):
            self.axiom(name)
        chosen = self.axioms if wanted is None else tuple(self.axiom(name) for name in wanted)
        return tuple(axiom for axiom in chosen if axiom.name not in excluded)


@dataclass(frozen=True)
class SortedTheory:
    """A theory whose every subterm carries its expanded sort."""

    theory: Theory
    definitions: Mapping[str, Definition]
    aliases: Mapping[str, Sort]

    @property
    def signature(self) -> Signature:
        return self.theory.signature

    @property
    def axioms(self) -> Tuple[Axiom, ...]:
        return self.theory.axioms

    @property
    def goals(self) -> Tuple[Goal, ...]:
        return self.theory.goals

    def goal(self, name: str) -> Goal:
        return self.theory.goal(name)

    def definition_sort(self, name: str) -> Sort:
        return definition_sort(self.definitions[name])


def definition_sort(definition: Definition) -> Sort:
    """Sort of a definition name: its parameter sorts curried onto ``m``."""
    sort: Sort = M
    for _, param_sort in reversed(definition.params):
        sort = Fun(param_sort, sort)
    return sort
