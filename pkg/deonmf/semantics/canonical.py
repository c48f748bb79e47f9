"""
Isomorphism classes of interpretations.

A renaming permutes worlds, contexts and individuals independently. The
canonical form of an interpretation is the renamed copy with the smallest
serialization key over all renamings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterator, List, Sequence, Tuple

from ..surface.sorts import C, E, M, P, W, Sort
from .frame import Frame, Interpretation, Table, iter_arguments
from .scope import Scope
from .universe import Value


@dataclass(frozen=True)
class Renaming:
    scope: Scope
    worlds: Tuple[int, ...]
    contexts: Tuple[int, ...]
    individuals: Tuple[int, ...]

    def world_set(self, subset: int) -> int:
        result = 0
        for w, target in enumerate(self.worlds):
            if subset >> w & 1:
                result |= 1 << target
        return result

    @cached_property
    def _masks(self) -> List[int]:
        n_w = self.scope.n_w
        table = []
        for mask in range(1 << self.scope.cells):
            renamed = 0
            for c, target_c in enumerate(self.contexts):
                for w, target_w in enumerate(self.worlds):
                    if mask >> (c * n_w + w) & 1:
                        renamed |= 1 << (target_c * n_w + target_w)
            table.append(renamed)
        return table

    def mask(self, mask: int) -> int:
        return self._masks[mask]

    def value(self, sort: Sort, value: Value) -> Value:
        if sort == W:
            return self.worlds[value]  # type: ignore[index]
        if sort == C:
            return self.contexts[value]  # type: ignore[index]
        if sort == E:
            return self.individuals[value]  # type: ignore[index]
        if sort == M:
            return self.mask(value)  # type: ignore[arg-type]
        if sort == P:
            renamed = [0] * self.scope.n_e
            for e, part in enumerate(value):  # type: ignore[arg-type]
                renamed[self.individuals[e]] = self.mask(part)
            return tuple(renamed)
        raise TypeError(sort)


def renamings(scope: Scope) -> Iterator[Renaming]:
    for worlds, contexts, individuals in product(
        permutations(range(scope.n_w)), permutations(range(scope.n_c)), permutations(range(scope.n_e))
    ):
        yield Renaming(scope, worlds, contexts, individuals)


def apply_renaming(model: Interpretation, renaming: Renaming) -> Interpretation:
    frame = model.frame
    scope = frame.scope
    av = [0] * scope.n_w
    pv = [0] * scope.n_w
    for w, target in enumerate(renaming.worlds):
        av[target] = renaming.world_set(frame.av[w])
        pv[target] = renaming.world_set(frame.pv[w])
    ob = [0] * (1 << scope.n_w)
    for x, row in enumerate(frame.ob):
        renamed_row = 0
        for y in range(1 << scope.n_w):
            if row >> y & 1:
                renamed_row |= 1 << renaming.world_set(y)
        ob[renaming.world_set(x)] = renamed_row
    world_of = [0] * scope.n_c
    agent_of = [0] * scope.n_c
    for c, target in enumerate(renaming.contexts):
        world_of[target] = renaming.worlds[frame.world_of[c]]
        agent_of[target] = renaming.individuals[frame.agent_of[c]]
    renamed_frame = Frame(scope, tuple(av), tuple(pv), tuple(ob), tuple(world_of), tuple(agent_of))
    tables = tuple((name, _rename_table(table, renaming, scope)) for name, table in model.tables)
    return Interpretation(renamed_frame, tables)


def _rename_table(table: Table, renaming: Renaming, scope: Scope) -> Table:
    cells = [0] * len(table.cells)
    for position, args in enumerate(iter_arguments(table.arg_sorts, scope)):
        renamed_args = [renaming.value(sort, value) for sort, value in zip(table.arg_sorts, args)]
        cells[table.index(renamed_args, scope)] = renaming.mask(table.cells[position])
    return Table(table.arg_sorts, tuple(cells))


def serialization_key(model: Interpretation) -> Tuple:
    frame = model.frame
    return (
        frame.world_of,
        frame.agent_of,
        frame.av,
        frame.pv,
        frame.ob,
        tuple((name, table.cells) for name, table in model.tables),
    )


def canonical_form(model: Interpretation) -> Interpretation:
    """The representative of ``model``'s isomorphism class."""
    best = model
    best_key = serialization_key(model)
    for renaming in renamings(model.scope):
        candidate = apply_renaming(model, renaming)
        key = serialization_key(candidate)
        if key < best_key:
            best, best_key = candidate, key
    return best


def orbit(model: Interpretation) -> List[Interpretation]:
    """All distinct renamed copies of ``model``, in renaming order."""
    seen = {}
    for renaming in renamings(model.scope):
        candidate = apply_renaming(model, renaming)
        seen.setdefault(serialization_key(candidate), candidate)
    return list(seen.values())


def isomorphic(left: Interpretation, right: Interpretation) -> bool:
    return canonical_form(left) == canonical_form(right)


def canonical_classes(models: Sequence[Interpretation]) -> List[Interpretation]:
    """Canonical representatives of ``models``, deduplicated, in first-seen order."""
    seen = {}
    for model in models:
        canonical = canonical_form(model)
        seen.setdefault(serialization_key(canonical), canonical)
    return list(seen.values())
