"""
Bijection between propositional variables and semantic cells.

Variables are numbered from 1 in a fixed order: av, pv, ob, the worldOf and
agentOf selector groups, then one block per table constant in signature
order. Inside a table block the argument tuple is most significant and the
(context, world) bit least significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Tuple

from ..errors import IncompleteAssignment, ScopeTooLarge
from ..semantics.frame import Frame, Interpretation, Table, table_shape, table_size
from ..semantics.render import format_value
from ..semantics.scope import Scope
from ..semantics.universe import universe_size, value_at
from ..surface.sorts import Sort
from ..surface.theory import BUILTIN_CONSTANTS, Signature


@dataclass(frozen=True)
class TableBlock:
    name: str
    arg_sorts: Tuple[Sort, ...]
    rows: int
    offset: int


@dataclass(frozen=True)
class PropVarMap:
    scope: Scope
    tables: Tuple[TableBlock, ...]

    @classmethod
    def build(cls, signature: Signature, scope: Scope) -> "PropVarMap":
        builtin = {name for name, _ in BUILTIN_CONSTANTS}
        offset = cls.frame_size(scope)
        blocks: List[TableBlock] = []
        for name, sort in signature.items():
            if name in builtin:
                continue
            shape = table_shape(sort)
            rows = table_size(shape, scope)
            blocks.append(TableBlock(name, shape, rows, offset))
            offset += rows * scope.cells
        return cls(scope, tuple(blocks))

    @staticmethod
    def frame_size(scope: Scope) -> int:
        n_w = scope.n_w
        return 2 * n_w * n_w + (1 << (2 * n_w)) + scope.n_c * n_w + scope.n_c * scope.n_e

    @staticmethod
    def closed_form_count(signature: Signature, scope: Scope) -> int:
        """nW² + nW² + 4^nW + nC·nW + nC·nE + Σ_k |args_k| · nC·nW."""
        builtin = {name for name, _ in BUILTIN_CONSTANTS}
        total = PropVarMap.frame_size(scope)
        for name, sort in signature.items():
            if name not in builtin:
                total += table_size(table_shape(sort), scope) * scope.cells
        return total

    @classmethod
    def check_budget(cls, signature: Signature, scope: Scope, cell_budget: int) -> int:
        cells = cls.closed_form_count(signature, scope)
        if cells > cell_budget:
            raise ScopeTooLarge(f"scope {scope} needs {cells} table cells, budget is {cell_budget}")
        return cells

    # Offsets --------------------------------------------------------------

    @property
    def size(self) -> int:
        if self.tables:
            last = self.tables[-1]
            return last.offset + last.rows * self.scope.cells
        return self.frame_size(self.scope)

    def av(self, w: int, v: int) -> int:
        return 1 + w * self.scope.n_w + v

    def pv(self, w: int, v: int) -> int:
        n_w = self.scope.n_w
        return 1 + n_w * n_w + w * n_w + v

    def ob(self, x: int, y: int) -> int:
        n_w = self.scope.n_w
        return 1 + 2 * n_w * n_w + (x << n_w) + y

    def world_of(self, c: int, w: int) -> int:
        n_w = self.scope.n_w
        return 1 + 2 * n_w * n_w + (1 << (2 * n_w)) + c * n_w + w

    def agent_of(self, c: int, e: int) -> int:
        n_w = self.scope.n_w
        return 1 + 2 * n_w * n_w + (1 << (2 * n_w)) + self.scope.n_c * n_w + c * self.scope.n_e + e

    def block(self, name: str) -> TableBlock:
        for block in self.tables:
            if block.name == name:
                return block
        raise KeyError(name)

    def table(self, name: str, row: int, cell: int) -> int:
        block = self.block(name)
        return 1 + block.offset + row * self.scope.cells + cell

    # Description ----------------------------------------------------------

    def describe(self, var: int) -> str:
        """Name the semantic cell behind primary variable ``var``."""
        scope = self.scope
        n_w = scope.n_w
        index = var - 1
        if not 0 <= index < self.size:
            raise KeyError(var)
        if index < n_w * n_w:
            return f"av[w{index // n_w + 1}][w{index % n_w + 1}]"
        index -= n_w * n_w
        if index < n_w * n_w:
            return f"pv[w{index // n_w + 1}][w{index % n_w + 1}]"
        index -= n_w * n_w
        if index < 1 << (2 * n_w):
            return f"ob[{_subset(index >> n_w)}][{_subset(index & ((1 << n_w) - 1))}]"
        index -= 1 << (2 * n_w)
        if index < scope.n_c * n_w:
            return f"worldOf[c{index // n_w + 1}]=w{index % n_w + 1}"
        index -= scope.n_c * n_w
        if index < scope.n_c * scope.n_e:
            return f"agentOf[c{index // scope.n_e + 1}]=e{index % scope.n_e + 1}"
        for block in self.tables:
            local = var - 1 - block.offset
            if 0 <= local < block.rows * scope.cells:
                row, cell = divmod(local, scope.cells)
                args = _row_args(block, row, scope)
                point = f"c{cell // n_w + 1}w{cell % n_w + 1}"
                return f"{block.name}[{args}][{point}]" if args else f"{block.name}[{point}]"
        raise KeyError(var)

    def cells(self) -> Iterator[Tuple[int, str]]:
        for var in range(1, self.size + 1):
            yield var, self.describe(var)

    # Interpretation <-> assignment -----------------------------------------

    def interpretation(self, assignment: Mapping[int, bool]) -> Interpretation:
        scope = self.scope
        n_w = scope.n_w

        def value(var: int) -> bool:
            try:
                return bool(assignment[var])
            except KeyError as exc:
                raise IncompleteAssignment(f"no value for variable {var} ({self.describe(var)})") from exc

        def world_mask(var_of) -> int:
            return sum(1 << v for v in range(n_w) if value(var_of(v)))

        av = tuple(world_mask(lambda v, w=w: self.av(w, v)) for w in range(n_w))
        pv = tuple(world_mask(lambda v, w=w: self.pv(w, v)) for w in range(n_w))
        ob = tuple(
            sum(1 << y for y in range(1 << n_w) if value(self.ob(x, y))) for x in range(1 << n_w)
        )
        world_of = tuple(self._selected(value, lambda w, c=c: self.world_of(c, w), n_w, f"worldOf[c{c + 1}]") for c in range(scope.n_c))
        agent_of = tuple(self._selected(value, lambda e, c=c: self.agent_of(c, e), scope.n_e, f"agentOf[c{c + 1}]") for c in range(scope.n_c))
        frame = Frame(scope, av, pv, ob, world_of, agent_of)
        tables: Dict[str, Table] = {}
        for block in self.tables:
            cells = []
            for row in range(block.rows):
                base = 1 + block.offset + row * scope.cells
                cells.append(sum(1 << bit for bit in range(scope.cells) if value(base + bit)))
            tables[block.name] = Table(block.arg_sorts, tuple(cells))
        return Interpretation(frame, tuple(sorted(tables.items())))

    @staticmethod
    def _selected(value, var_of, size: int, label: str) -> int:
        chosen = [index for index in range(size) if value(var_of(index))]
        if len(chosen) != 1:
            raise IncompleteAssignment(f"{label} selects {len(chosen)} values instead of exactly one")
        return chosen[0]

    def assignment(self, model: Interpretation) -> Dict[int, bool]:
        """Primary-variable assignment encoding ``model``."""
        scope = self.scope
        frame = model.frame
        n_w = scope.n_w
        result: Dict[int, bool] = {}
        for w in range(n_w):
            for v in range(n_w):
                result[self.av(w, v)] = bool(frame.av[w] >> v & 1)
                result[self.pv(w, v)] = bool(frame.pv[w] >> v & 1)
        for x in range(1 << n_w):
            for y in range(1 << n_w):
                result[self.ob(x, y)] = frame.obliges(x, y)
        for c in range(scope.n_c):
            for w in range(n_w):
                result[self.world_of(c, w)] = frame.world_of[c] == w
            for e in range(scope.n_e):
                result[self.agent_of(c, e)] = frame.agent_of[c] == e
        for block in self.tables:
            table = model.table(block.name)
            for row, mask in enumerate(table.cells):
                base = 1 + block.offset + row * scope.cells
                for bit in range(scope.cells):
                    result[base + bit] = bool(mask >> bit & 1)
        return result


def _subset(mask: int) -> str:
    return "{" + ",".join(f"w{w + 1}" for w in range(mask.bit_length()) if mask >> w & 1) + "}"


def _row_args(block: TableBlock, row: int, scope: Scope) -> str:
    values = []
    for sort in reversed(block.arg_sorts):
        size = universe_size(sort, scope)
        row, index = divmod(row, size)
        values.append(format_value(sort, value_at(sort, index, scope), scope))
    return " ".join(reversed(values))
