"""
Finite frames and interpretations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Mapping, Sequence, Tuple

from ..errors import UnsupportedSort
from ..surface.sorts import M, Sort, sort_name, uncurry
from .scope import Scope
from .universe import Value, iter_universe, universe_size, value_index, worlds_mask


@dataclass(frozen=True)
class Frame:
    """Accessibility, obligation neighbourhoods and context features.

    ``av``/``pv`` hold one world mask per world. ``ob`` holds, for every world
    mask ``X``, a mask over world masks: bit ``Y`` is set iff ``Y`` is in
    ``ob(X)``.
    """

    scope: Scope
    av: Tuple[int, ...]
    pv: Tuple[int, ...]
    ob: Tuple[int, ...]
    world_of: Tuple[int, ...]
    agent_of: Tuple[int, ...]

    def __post_init__(self) -> None:
        scope = self.scope
        if len(self.av) != scope.n_w or len(self.pv) != scope.n_w:
            raise ValueError("av/pv need one entry per world")
        if len(self.ob) != 1 << scope.n_w:
            raise ValueError("ob needs one entry per set of worlds")
        if len(self.world_of) != scope.n_c or len(self.agent_of) != scope.n_c:
            raise ValueError("worldOf/agentOf need one entry per context")
        limit = worlds_mask(scope)
        if any(not 0 <= mask <= limit for mask in self.av + self.pv):
            raise ValueError("av/pv entries must be sets of worlds")
        if any(not 0 <= w < scope.n_w for w in self.world_of):
            raise ValueError("worldOf must map into the worlds")
        if any(not 0 <= e < scope.n_e for e in self.agent_of):
            raise ValueError("agentOf must map into the individuals")

    def obliges(self, condition: int, content: int) -> bool:
        return bool(self.ob[condition] >> content & 1)

    def ob_sets(self, condition: int) -> Iterator[int]:
        for content in range(1 << self.scope.n_w):
            if self.obliges(condition, content):
                yield content


@dataclass(frozen=True)
class Table:
    """Total finite function from argument tuples to characters.

    ``cells`` is indexed by the mixed-radix position of the argument tuple,
    first argument most significant.
    """

    arg_sorts: Tuple[Sort, ...]
    cells: Tuple[int, ...]

    def index(self, args: Sequence[Value], scope: Scope) -> int:
        position = 0
        for sort, value in zip(self.arg_sorts, args):
            position = position * universe_size(sort, scope) + value_index(sort, value, scope)
        return position

    def lookup(self, args: Sequence[Value], scope: Scope) -> int:
        return self.cells[self.index(args, scope)]


def table_shape(sort: Sort) -> Tuple[Sort, ...]:
    """Argument sorts of the table backing a constant of ``sort``."""
    args, result = uncurry(sort)
    if result != M:
        raise UnsupportedSort(f"constants of sort {sort_name(sort)} have no table encoding")
    return args


def table_size(arg_sorts: Sequence[Sort], scope: Scope) -> int:
    size = 1
    for sort in arg_sorts:
        size *= universe_size(sort, scope)
    return size


def iter_arguments(arg_sorts: Sequence[Sort], scope: Scope) -> Iterator[Tuple[Value, ...]]:
    """Argument tuples in table order."""
    return product(*(list(iter_universe(sort, scope)) for sort in arg_sorts))


@dataclass(frozen=True)
class Interpretation:
    frame: Frame
    tables: Tuple[Tuple[str, Table], ...] = ()

    @property
    def scope(self) -> Scope:
        return self.frame.scope

    @cached_property
    def table_map(self) -> Mapping[str, Table]:
        return dict(self.tables)

    def table(self, name: str) -> Table:
        return self.table_map[name]
