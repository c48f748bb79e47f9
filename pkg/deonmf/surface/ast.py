"""
Two-layer abstract syntax.

Character-level nodes (:class:`CharNode` subclasses) denote terms of the
embedded logic; every well-sorted formula among them has sort ``m``.
Meta-level nodes (:class:`MetaNode` subclasses) are validity statements of
sort ``bool``.

All nodes are frozen and compare structurally. ``loc`` and ``sort`` are
bookkeeping filled in by the parser and the sort checker and never take part
in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import FrozenSet, Iterator, List, Optional, Tuple, Union

from ..errors import Location
from .sorts import Sort


@dataclass(frozen=True)
class CharNode:
    loc: Optional[Location] = field(default=None, compare=False, repr=False, kw_only=True)
    sort: Optional[Sort] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Const(CharNode):
    name: str


@dataclass(frozen=True)
class Var(CharNode):
    name: str


@dataclass(frozen=True)
class Lit(CharNode):
    """A concrete element of a finite universe (see ``semantics.universe``)."""

    lit_sort: Sort
    value: Union[int, Tuple[int, ...]]


@dataclass(frozen=True)
class App(CharNode):
    fun: "CharFormula"
    arg: "CharFormula"


@dataclass(frozen=True)
class Top(CharNode):
    pass


@dataclass(frozen=True)
class Bottom(CharNode):
    pass


@dataclass(frozen=True)
class Not(CharNode):
    body: "CharFormula"


@dataclass(frozen=True)
class And(CharNode):
    left: "CharFormula"
    right: "CharFormula"


@dataclass(frozen=True)
class Or(CharNode):
    left: "CharFormula"
    right: "CharFormula"


@dataclass(frozen=True)
class Imp(CharNode):
    left: "CharFormula"
    right: "CharFormula"


@dataclass(frozen=True)
class Iff(CharNode):
    left: "CharFormula"
    right: "CharFormula"


@dataclass(frozen=True)
class BoxA(CharNode):
    body: "CharFormula"


@dataclass(frozen=True)
class DiaA(CharNode):
    body: "CharFormula"


@dataclass(frozen=True)
class BoxP(CharNode):
    body: "CharFormula"


@dataclass(frozen=True)
class DiaP(CharNode):
    body: "CharFormula"


@dataclass(frozen=True)
class BoxD(CharNode):
    body: "CharFormula"


@dataclass(frozen=True)
class ObDyadic(CharNode):
    body: "CharFormula"
    condition: "CharFormula"


@dataclass(frozen=True)
class ObA(CharNode):
    body: "CharFormula"


@dataclass(frozen=True)
class ObI(CharNode):
    body: "CharFormula"


@dataclass(frozen=True)
class Forall(CharNode):
    var: str
    var_sort: Sort
    body: "CharFormula"


@dataclass(frozen=True)
class Exists(CharNode):
    var: str
    var_sort: Sort
    body: "CharFormula"


CharFormula = CharNode

UNARY_OPS = (Not, BoxA, DiaA, BoxP, DiaP, BoxD, ObA, ObI)
BINARY_OPS = (And, Or, Imp, Iff)
BINDERS = (Forall, Exists)


# Meta level ---------------------------------------------------------------


@dataclass(frozen=True)
class MetaNode:
    loc: Optional[Location] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class ValidCtx(MetaNode):
    """Truth at every world for one context."""

    formula: CharFormula
    ctx: CharFormula


@dataclass(frozen=True)
class Valid(MetaNode):
    formula: CharFormula


@dataclass(frozen=True)
class AtCtx(MetaNode):
    """Truth at a context's own world."""

    formula: CharFormula
    ctx: CharFormula


@dataclass(frozen=True)
class ValidD(MetaNode):
    formula: CharFormula


@dataclass(frozen=True)
class MetaNot(MetaNode):
    body: "MetaFormula"


@dataclass(frozen=True)
class MetaAnd(MetaNode):
    left: "MetaFormula"
    right: "MetaFormula"


@dataclass(frozen=True)
class MetaImp(MetaNode):
    left: "MetaFormula"
    right: "MetaFormula"


@dataclass(frozen=True)
class MetaForallCtx(MetaNode):
    var: str
    body: "MetaFormula"


MetaFormula = MetaNode


# Structural helpers -------------------------------------------------------


def children(node: CharNode) -> Tuple[CharNode, ...]:
    if isinstance(node, App):
        return (node.fun, node.arg)
    if isinstance(node, UNARY_OPS):
        return (node.body,)
    if isinstance(node, BINARY_OPS):
        return (node.left, node.right)
    if isinstance(node, ObDyadic):
        return (node.body, node.condition)
    if isinstance(node, BINDERS):
        return (node.body,)
    return ()


@lru_cache(maxsize=None)
def free_vars(node: CharNode) -> FrozenSet[str]:
    if isinstance(node, Var):
        return frozenset((node.name,))
    if isinstance(node, BINDERS):
        return free_vars(node.body) - {node.var}
    result: FrozenSet[str] = frozenset()
    for child in children(node):
        result |= free_vars(child)
    return result


def meta_free_vars(node: MetaNode) -> FrozenSet[str]:
    if isinstance(node, (Valid, ValidD)):
        return free_vars(node.formula)
    if isinstance(node, (ValidCtx, AtCtx)):
        return free_vars(node.formula) | free_vars(node.ctx)
    if isinstance(node, MetaNot):
        return meta_free_vars(node.body)
    if isinstance(node, (MetaAnd, MetaImp)):
        return meta_free_vars(node.left) | meta_free_vars(node.right)
    if isinstance(node, MetaForallCtx):
        return meta_free_vars(node.body) - {node.var}
    raise TypeError(node)


def spine(node: CharNode) -> Tuple[CharNode, List[CharNode]]:
    """Return the head and arguments of a curried application."""
    args: List[CharNode] = []
    while isinstance(node, App):
        args.append(node.arg)
        node = node.fun
    args.reverse()
    return node, args


def walk(node: CharNode) -> Iterator[CharNode]:
    yield node
    for child in children(node):
        yield from walk(child)


def rebuild(node: CharNode, new_children: Tuple[CharNode, ...]) -> CharNode:
    """Copy ``node`` with replaced children, keeping ``loc`` and ``sort``."""
    if isinstance(node, App):
        return replace(node, fun=new_children[0], arg=new_children[1])
    if isinstance(node, UNARY_OPS) or isinstance(node, BINDERS):
        return replace(node, body=new_children[0])
    if isinstance(node, BINARY_OPS):
        return replace(node, left=new_children[0], right=new_children[1])
    if isinstance(node, ObDyadic):
        return replace(node, body=new_children[0], condition=new_children[1])
    return node
