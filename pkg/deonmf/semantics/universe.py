"""
Finite value universes and the bit layout of characters.

A character (sort ``m``) is an integer mask with one bit per (context, world)
pair; bit ``c * n_w + w`` is set iff the character holds at world ``w`` of
context ``c``. A value of sort ``p`` is a tuple of ``n_e`` characters and
``p`` values are ordered lexicographically, first individual most
significant. Sets of worlds are masks over ``n_w`` bits.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, List, Tuple, Union

from ..errors import UnsupportedSort
from ..surface.sorts import C, E, M, P, W, Sort, sort_name
from .scope import Scope

Value = Union[int, Tuple[int, ...]]


def value_universe(sort: Sort, scope: Scope) -> List[Value]:
    """All values of an enumerable sort in their canonical order."""
    return list(iter_universe(sort, scope))


def iter_universe(sort: Sort, scope: Scope) -> Iterator[Value]:
    if sort == W:
        return iter(range(scope.n_w))
    if sort == C:
        return iter(range(scope.n_c))
    if sort == E:
        return iter(range(scope.n_e))
    if sort == M:
        return iter(range(1 << scope.cells))
    if sort == P:
        return product(range(1 << scope.cells), repeat=scope.n_e)
    raise UnsupportedSort(f"sort {sort_name(sort)} has no finite enumeration")


def universe_size(sort: Sort, scope: Scope) -> int:
    if sort == W:
        return scope.n_w
    if sort == C:
        return scope.n_c
    if sort == E:
        return scope.n_e
    if sort == M:
        return 1 << scope.cells
    if sort == P:
        return (1 << scope.cells) ** scope.n_e
    raise UnsupportedSort(f"sort {sort_name(sort)} has no finite enumeration")


def value_index(sort: Sort, value: Value, scope: Scope) -> int:
    """Position of ``value`` in :func:`value_universe`."""
    if sort == P:
        radix = 1 << scope.cells
        index = 0
        for part in value:  # type: ignore[union-attr]
            index = index * radix + part
        return index
    return value  # type: ignore[return-value]


def value_at(sort: Sort, index: int, scope: Scope) -> Value:
    if sort != P:
        return index
    radix = 1 << scope.cells
    parts = []
    for _ in range(scope.n_e):
        index, part = divmod(index, radix)
        parts.append(part)
    return tuple(reversed(parts))


def check_value(sort: Sort, value: Value, scope: Scope) -> None:
    size = universe_size(sort, scope)
    if sort == P:
        if not isinstance(value, tuple) or len(value) != scope.n_e:
            raise UnsupportedSort(f"value {value!r} is not a {scope.n_e}-tuple of characters")
        if any(not 0 <= part < (1 << scope.cells) for part in value):
            raise UnsupportedSort(f"value {value!r} lies outside the universe of p at scope {scope}")
    elif not isinstance(value, int) or not 0 <= value < size:
        raise UnsupportedSort(f"value {value!r} lies outside the universe of {sort_name(sort)} at scope {scope}")


# Character bit helpers -----------------------------------------------------


def bit(c: int, w: int, scope: Scope) -> int:
    return 1 << (c * scope.n_w + w)


def full_mask(scope: Scope) -> int:
    return (1 << scope.cells) - 1


def worlds_mask(scope: Scope) -> int:
    return (1 << scope.n_w) - 1


def context_slice(mask: int, c: int, scope: Scope) -> int:
    """The set of worlds at which a character holds in context ``c``."""
    return (mask >> (c * scope.n_w)) & worlds_mask(scope)


def members(subset: int) -> Iterator[int]:
    """Indices of the set bits of ``subset``, ascending."""
    index = 0
    while subset:
        if subset & 1:
            yield index
        subset >>= 1
        index += 1


def is_subset(left: int, right: int) -> bool:
    return left & ~right == 0
