"""
Sort checker: annotates every character-level subterm with its expanded sort.

Sorts flow bottom-up only. Binders carry their sort, constants take theirs
from the signature and definitions are typed by their parameter list; there is
no inference beyond propagating through applications.
"""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Dict, Mapping, Optional

from ..errors import ArityError, SortError, SortMismatch, UnboundVariable
from . import ast
from .sorts import C, M, P, Fun, Sort, expand, sort_name
from .theory import Definition, SortedTheory, Theory, definition_sort

_LOGGER = logging.getLogger(__name__)

Env = Mapping[str, Sort]

_CONNECTIVES = ast.UNARY_OPS + ast.BINARY_OPS + (ast.ObDyadic,)


def sort_check(theory: Theory) -> SortedTheory:
    """Check a parsed theory and return it with sort-annotated formulas."""
    checker = SortChecker(theory)
    definitions: Dict[str, Definition] = {}
    for definition in theory.definitions:
        checked = checker.definition(definition)
        definitions[checked.name] = checked
        checker.definitions[checked.name] = checked
    axioms = tuple(replace(axiom, formula=checker.meta(axiom.formula, {})) for axiom in theory.axioms)
    goals = tuple(replace(goal, formula=checker.meta(goal.formula, {})) for goal in theory.goals)
    checked_theory = replace(theory, definitions=tuple(definitions.values()), axioms=axioms, goals=goals)
    _LOGGER.debug("Sort-checked %d axioms and %d goals", len(axioms), len(goals))
    return SortedTheory(checked_theory, definitions, theory.alias_map)


def check_meta(theory: SortedTheory, formula: ast.MetaNode) -> ast.MetaNode:
    """Sort-check a stand-alone meta formula against an already checked theory."""
    checker = SortChecker(theory.theory)
    checker.definitions.update(theory.definitions)
    return checker.meta(formula, {})


def check_char(theory: SortedTheory, formula: ast.CharNode, env: Optional[Env] = None) -> ast.CharNode:
    checker = SortChecker(theory.theory)
    checker.definitions.update(theory.definitions)
    return checker.char(formula, dict(env or {}))


class SortChecker:
    def __init__(self, theory: Theory) -> None:
        self.signature = theory.signature
        self.aliases = theory.alias_map
        self.definitions: Dict[str, Definition] = {}

    def definition(self, definition: Definition) -> Definition:
        env: Dict[str, Sort] = {}
        for name, sort in definition.params:
            self._check_binder(name, definition.loc)
            env[name] = expand(sort, self.aliases)
        body = self._expect(self.char(definition.body, env), M)
        return replace(definition, body=body)

    # Meta level -----------------------------------------------------------

    def meta(self, node: ast.MetaNode, env: Env) -> ast.MetaNode:
        if isinstance(node, (ast.Valid, ast.ValidD)):
            return replace(node, formula=self._expect(self.char(node.formula, env), M))
        if isinstance(node, (ast.ValidCtx, ast.AtCtx)):
            formula = self._expect(self.char(node.formula, env), M)
            ctx = self._expect(self.char(node.ctx, env), C)
            return replace(node, formula=formula, ctx=ctx)
        if isinstance(node, ast.MetaNot):
            return replace(node, body=self.meta(node.body, env))
        if isinstance(node, (ast.MetaAnd, ast.MetaImp)):
            return replace(node, left=self.meta(node.left, env), right=self.meta(node.right, env))
        if isinstance(node, ast.MetaForallCtx):
            self._check_binder(node.var, node.loc)
            return replace(node, body=self.meta(node.body, {**env, node.var: C}))
        raise TypeError(f"not a meta formula: {node!r}")

    # Character level ------------------------------------------------------

    def char(self, node: ast.CharNode, env: Env) -> ast.CharNode:
        if isinstance(node, ast.Var):
            if node.name not in env:
                raise UnboundVariable(node.name, node.loc)
            return replace(node, sort=env[node.name])
        if isinstance(node, ast.Const):
            return replace(node, sort=self._constant_sort(node))
        if isinstance(node, ast.Lit):
            return replace(node, sort=self._literal_sort(node))
        if isinstance(node, (ast.Top, ast.Bottom)):
            return replace(node, sort=M)
        if isinstance(node, ast.App):
            fun = self.char(node.fun, env)
            arg = self.char(node.arg, env)
            if not isinstance(fun.sort, Fun):
                raise ArityError(f"term of sort {sort_name(fun.sort)} applied to an argument", node.loc)
            if arg.sort != fun.sort.domain:
                raise SortMismatch(sort_name(fun.sort.domain), sort_name(arg.sort), arg.loc or node.loc)
            return replace(node, fun=fun, arg=arg, sort=fun.sort.codomain)
        if isinstance(node, _CONNECTIVES):
            checked = tuple(self._expect(self.char(child, env), M) for child in ast.children(node))
            return replace(ast.rebuild(node, checked), sort=M)
        if isinstance(node, ast.BINDERS):
            self._check_binder(node.var, node.loc)
            var_sort = expand(node.var_sort, self.aliases)
            body = self._expect(self.char(node.body, {**env, node.var: var_sort}), M)
            return replace(node, var_sort=var_sort, body=body, sort=M)
        raise TypeError(f"not a character formula: {node!r}")

    def _constant_sort(self, node: ast.Const) -> Sort:
        if node.name in self.signature:
            return expand(self.signature[node.name], self.aliases)
        if node.name in self.definitions:
            return definition_sort(self.definitions[node.name])
        raise UnboundVariable(node.name, node.loc)

    def _literal_sort(self, node: ast.Lit) -> Sort:
        is_tuple = isinstance(node.value, tuple)
        if (node.lit_sort == P) != is_tuple:
            raise SortError(f"malformed literal for sort {sort_name(node.lit_sort)}", node.loc)
        values = node.value if is_tuple else (node.value,)
        if any(value < 0 for value in values):
            raise SortError("literal values are non-negative", node.loc)
        return node.lit_sort

    def _check_binder(self, name: str, loc) -> None:
        if name in self.signature or name in self.definitions:
            raise SortError(f"bound name '{name}' shadows a declared constant", loc)

    @staticmethod
    def _expect(node: ast.CharNode, sort: Sort) -> ast.CharNode:
        if node.sort != sort:
            raise SortMismatch(sort_name(sort), sort_name(node.sort), node.loc)
        return node
