"""
Capture-avoiding substitution and alpha-equivalence.
"""

from __future__ import annotations

from dataclasses import replace
from itertools import count
from typing import Dict, FrozenSet, Iterable, Mapping

from ..errors import SortMismatch
from . import ast
from .sorts import sort_name


def substitute(formula: ast.CharNode, var: str, value: ast.CharNode) -> ast.CharNode:
    """Replace the free occurrences of ``var`` in ``formula`` by ``value``."""
    return substitute_all(formula, {var: value})


def substitute_all(formula: ast.CharNode, mapping: Mapping[str, ast.CharNode]) -> ast.CharNode:
    """Simultaneous capture-avoiding substitution."""
    relevant = {name: value for name, value in mapping.items() if name in ast.free_vars(formula)}
    if not relevant:
        return formula
    return _subst(formula, relevant)


def substitute_meta(formula: ast.MetaNode, mapping: Mapping[str, ast.CharNode]) -> ast.MetaNode:
    if not mapping:
        return formula
    if isinstance(formula, (ast.Valid, ast.ValidD)):
        return replace(formula, formula=substitute_all(formula.formula, mapping))
    if isinstance(formula, (ast.ValidCtx, ast.AtCtx)):
        return replace(
            formula,
            formula=substitute_all(formula.formula, mapping),
            ctx=substitute_all(formula.ctx, mapping),
        )
    if isinstance(formula, ast.MetaNot):
        return replace(formula, body=substitute_meta(formula.body, mapping))
    if isinstance(formula, (ast.MetaAnd, ast.MetaImp)):
        return replace(
            formula,
            left=substitute_meta(formula.left, mapping),
            right=substitute_meta(formula.right, mapping),
        )
    if isinstance(formula, ast.MetaForallCtx):
        inner = {name: value for name, value in mapping.items() if name != formula.var}
        captured = _free_in_values(inner.values())
        if formula.var in captured:
            fresh = fresh_name(formula.var, captured | ast.meta_free_vars(formula.body))
            body = substitute_meta(formula.body, {formula.var: ast.Var(fresh, sort=None)})
            formula = replace(formula, var=fresh, body=body)
        return replace(formula, body=substitute_meta(formula.body, inner))
    raise TypeError(formula)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    taken = set(avoid)
    stem = base.rstrip("'0123456789") or base
    for index in count(1):
        candidate = f"{stem}{index}"
        if candidate not in taken:
            return candidate
    raise AssertionError("unreachable")


def _free_in_values(values: Iterable[ast.CharNode]) -> FrozenSet[str]:
    result: FrozenSet[str] = frozenset()
    for value in values:
        result |= ast.free_vars(value)
    return result


def _subst(node: ast.CharNode, mapping: Dict[str, ast.CharNode]) -> ast.CharNode:
    if isinstance(node, ast.Var):
        if node.name not in mapping:
            return node
        value = mapping[node.name]
        if node.sort is not None and value.sort is not None and node.sort != value.sort:
            raise SortMismatch(sort_name(node.sort), sort_name(value.sort), value.loc or node.loc)
        return value
    free = ast.free_vars(node)
    mapping = {name: value for name, value in mapping.items() if name in free}
    if not mapping:
        return node
    if isinstance(node, ast.BINDERS):
        captured = _free_in_values(mapping.values())
        if node.var in captured:
            fresh = fresh_name(node.var, captured | ast.free_vars(node.body) | set(mapping))
            renamed = _subst(node.body, {node.var: ast.Var(fresh, sort=node.var_sort, loc=node.loc)})
            node = replace(node, var=fresh, body=renamed)
        return replace(node, body=_subst(node.body, mapping))
    return ast.rebuild(node, tuple(_subst(child, mapping) for child in ast.children(node)))


def alpha_normalize(node: ast.CharNode) -> ast.CharNode:
    """Rename every bound variable to a name determined by its binding depth."""
    return _normalize(node, {}, 0)


def _normalize(node: ast.CharNode, renaming: Dict[str, str], depth: int) -> ast.CharNode:
    if isinstance(node, ast.Var):
        return replace(node, name=renaming.get(node.name, node.name))
    if isinstance(node, ast.BINDERS):
        canonical = f"#{depth}"
        body = _normalize(node.body, {**renaming, node.var: canonical}, depth + 1)
        return replace(node, var=canonical, body=body)
    children = ast.children(node)
    if not children:
        return node
    return ast.rebuild(node, tuple(_normalize(child, renaming, depth) for child in children))


def alpha_equivalent(left: ast.CharNode, right: ast.CharNode) -> bool:
    return alpha_normalize(left) == alpha_normalize(right)
