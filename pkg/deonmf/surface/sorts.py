"""
Sort universe of the embedded logic.

Base sorts are worlds (``w``), contexts (``c``), individuals (``e``) and the
meta-level truth values (``bool``). Function sorts are built with
:class:`Fun`; the named aliases ``wo``, ``cwo``/``m`` and ``p`` expand to
``w => bool``, ``c => wo`` and ``e => m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Tuple, Union

from ..errors import UnknownSort


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Fun:
    domain: "Sort"
    codomain: "Sort"

    def __str__(self) -> str:
        left = f"({self.domain})" if isinstance(self.domain, Fun) else str(self.domain)
        return f"{left} => {self.codomain}"


@dataclass(frozen=True)
class Named:
    """A reference to an alias; expanded structurally by :func:`expand`."""

    name: str

    def __str__(self) -> str:
        return self.name


Sort = Union[Base, Fun, Named]

W = Base("w")
C = Base("c")
E = Base("e")
PROP = Base("bool")

WO = Fun(W, PROP)
M = Fun(C, WO)
P = Fun(E, M)

BASE_SORTS: Mapping[str, Base] = {"w": W, "c": C, "e": E, "bool": PROP}

BUILTIN_ALIASES: Mapping[str, Sort] = {
    "wo": WO,
    "cwo": M,
    "m": M,
    "p": P,
}

# Aliases a printer should prefer, most specific first.
_PRINT_NAMES: Tuple[Tuple[Sort, str], ...] = ((P, "p"), (M, "m"), (WO, "wo"))


def expand(sort: Sort, aliases: Optional[Mapping[str, Sort]] = None) -> Sort:
    """Replace every alias reference by its definition (idempotent)."""
    table = dict(BUILTIN_ALIASES)
    if aliases:
        table.update(aliases)
    return _expand(sort, table, ())


def _expand(sort: Sort, table: Mapping[str, Sort], seen: Tuple[str, ...]) -> Sort:
    if isinstance(sort, Base):
        return sort
    if isinstance(sort, Fun):
        return Fun(_expand(sort.domain, table, seen), _expand(sort.codomain, table, seen))
    if sort.name in seen:
        raise UnknownSort(f"recursive sort alias '{sort.name}'")
    if sort.name in BASE_SORTS:
        return BASE_SORTS[sort.name]
    if sort.name not in table:
        raise UnknownSort(f"unknown sort '{sort.name}'")
    return _expand(table[sort.name], table, seen + (sort.name,))


def sort_name(sort: Sort) -> str:
    """Render an expanded sort using the short alias names where possible."""
    for target, name in _PRINT_NAMES:
        if sort == target:
            return name
    if isinstance(sort, Fun):
        left = sort_name(sort.domain)
        if isinstance(sort.domain, Fun) and left not in {"p", "m", "wo"}:
            left = f"({left})"
        return f"{left} => {sort_name(sort.codomain)}"
    return str(sort)


def uncurry(sort: Sort) -> Tuple[Tuple[Sort, ...], Sort]:
    """Split a function sort into argument sorts, stopping at ``m``.

    A result of sort ``p`` contributes one further ``e`` argument so every
    table-backed constant ends in a character. Other results are returned
    unchanged.
    """
    args = []
    current = sort
    while isinstance(current, Fun) and current != M:
        args.append(current.domain)
        current = current.codomain
    return tuple(args), current


def enumerable(sort: Sort) -> bool:
    return sort in (W, C, E, M, P)
