"""
Reference evaluator.

Formulas are evaluated to whole characters at once: a character is an integer
mask over (context, world) pairs (see :mod:`deonmf.semantics.universe`), so
the lifted connectives are bitwise operations and a modal operator is a loop
over the points of the scope. Results are memoized per interpretation keyed
on the subformula and the values of its free variables.
"""

from __future__ import annotations

import logging
from typing import Dict, Mapping, Optional, Tuple

from ..errors import UnboundVariable, UnsupportedSort
from ..surface import ast
from ..surface.sorts import E
from ..surface.theory import AGENT, WORLD, Definition
from .frame import Interpretation
from .universe import Value, bit, check_value, context_slice, full_mask, iter_universe, worlds_mask

_LOGGER = logging.getLogger(__name__)

Valuation = Mapping[str, Value]

_EMPTY: Valuation = {}


class Evaluator:
    """Evaluates character and meta formulas against one interpretation."""

    def __init__(self, model: Interpretation, definitions: Optional[Mapping[str, Definition]] = None) -> None:
        self.model = model
        self.scope = model.scope
        self.frame = model.frame
        self.definitions = dict(definitions or {})
        self.full = full_mask(self.scope)
        self._cache: Dict[Tuple[ast.CharNode, Tuple[Tuple[str, Value], ...]], Value] = {}

    # Meta level -----------------------------------------------------------

    def meta(self, formula: ast.MetaNode, env: Valuation = _EMPTY) -> bool:
        if isinstance(formula, ast.Valid):
            return self.mask(formula.formula, env) == self.full
        if isinstance(formula, ast.ValidCtx):
            ctx = self.term(formula.ctx, env)
            return context_slice(self.mask(formula.formula, env), ctx, self.scope) == worlds_mask(self.scope)
        if isinstance(formula, ast.AtCtx):
            ctx = self.term(formula.ctx, env)
            return self.holds_at_own_world(self.mask(formula.formula, env), ctx)
        if isinstance(formula, ast.ValidD):
            return self.indexically_valid(self.mask(formula.formula, env))
        if isinstance(formula, ast.MetaNot):
            return not self.meta(formula.body, env)
        if isinstance(formula, ast.MetaAnd):
            return self.meta(formula.left, env) and self.meta(formula.right, env)
        if isinstance(formula, ast.MetaImp):
            return not self.meta(formula.left, env) or self.meta(formula.right, env)
        if isinstance(formula, ast.MetaForallCtx):
            return all(self.meta(formula.body, {**env, formula.var: c}) for c in range(self.scope.n_c))
        raise TypeError(f"not a meta formula: {formula!r}")

    def holds_at_own_world(self, mask: int, ctx: int) -> bool:
        return bool(mask & bit(ctx, self.frame.world_of[ctx], self.scope))

    def indexically_valid(self, mask: int) -> bool:
        return all(self.holds_at_own_world(mask, c) for c in range(self.scope.n_c))

    # Character level ------------------------------------------------------

    def mask(self, formula: ast.CharNode, env: Valuation = _EMPTY) -> int:
        value = self.term(formula, env)
        if not isinstance(value, int):
            raise UnsupportedSort("expected a character, found a value of sort p")
        return value

    def term(self, node: ast.CharNode, env: Valuation = _EMPTY) -> Value:
        free = ast.free_vars(node)
        try:
            key = (node, tuple(sorted((name, env[name]) for name in free)))
        except KeyError as exc:
            raise UnboundVariable(str(exc.args[0]), node.loc) from exc
        cached = self._cache.get(key)
        if cached is None:
            cached = self._term(node, env)
            self._cache[key] = cached
        return cached

    def _term(self, node: ast.CharNode, env: Valuation) -> Value:
        if isinstance(node, (ast.Var, ast.Const, ast.App)):
            return self._application(node, env)
        if isinstance(node, ast.Lit):
            check_value(node.lit_sort, node.value, self.scope)
            return node.value
        if isinstance(node, ast.Top):
            return self.full
        if isinstance(node, ast.Bottom):
            return 0
        if isinstance(node, ast.Not):
            return self.full & ~self.mask(node.body, env)
        if isinstance(node, ast.And):
            return self.mask(node.left, env) & self.mask(node.right, env)
        if isinstance(node, ast.Or):
            return self.mask(node.left, env) | self.mask(node.right, env)
        if isinstance(node, ast.Imp):
            return (self.full & ~self.mask(node.left, env)) | self.mask(node.right, env)
        if isinstance(node, ast.Iff):
            return self.full & ~(self.mask(node.left, env) ^ self.mask(node.right, env))
        if isinstance(node, ast.BoxA):
            return self._pointwise(lambda c, w, s: self.frame.av[w] & ~s == 0, self.mask(node.body, env))
        if isinstance(node, ast.DiaA):
            return self._pointwise(lambda c, w, s: self.frame.av[w] & s != 0, self.mask(node.body, env))
        if isinstance(node, ast.BoxP):
            return self._pointwise(lambda c, w, s: self.frame.pv[w] & ~s == 0, self.mask(node.body, env))
        if isinstance(node, ast.DiaP):
            return self._pointwise(lambda c, w, s: self.frame.pv[w] & s != 0, self.mask(node.body, env))
        if isinstance(node, ast.BoxD):
            return self.full if self.indexically_valid(self.mask(node.body, env)) else 0
        if isinstance(node, ast.ObDyadic):
            return self._dyadic(self.mask(node.body, env), self.mask(node.condition, env))
        if isinstance(node, ast.ObA):
            return self._monadic(self.frame.av, self.mask(node.body, env))
        if isinstance(node, ast.ObI):
            return self._monadic(self.frame.pv, self.mask(node.body, env))
        if isinstance(node, ast.Forall):
            result = self.full
            for value in iter_universe(node.var_sort, self.scope):
                result &= self.mask(node.body, {**env, node.var: value})
                if not result:
                    break
            return result
        if isinstance(node, ast.Exists):
            result = 0
            for value in iter_universe(node.var_sort, self.scope):
                result |= self.mask(node.body, {**env, node.var: value})
                if result == self.full:
                    break
            return result
        raise TypeError(f"not a character formula: {node!r}")

    def _pointwise(self, test, body: int) -> int:
        result = 0
        for c in range(self.scope.n_c):
            content = context_slice(body, c, self.scope)
            for w in range(self.scope.n_w):
                if test(c, w, content):
                    result |= bit(c, w, self.scope)
        return result

    def _dyadic(self, body: int, condition: int) -> int:
        result = 0
        row = worlds_mask(self.scope)
        for c in range(self.scope.n_c):
            if self.frame.obliges(context_slice(condition, c, self.scope), context_slice(body, c, self.scope)):
                result |= row << (c * self.scope.n_w)
        return result

    def _monadic(self, access: Tuple[int, ...], body: int) -> int:
        def test(c: int, w: int, content: int) -> bool:
            return self.frame.obliges(access[w], content) and access[w] & ~content != 0

        return self._pointwise(test, body)

    # Applications ---------------------------------------------------------

    def _application(self, node: ast.CharNode, env: Valuation) -> Value:
        head, arg_nodes = ast.spine(node)
        args = [self.term(arg, env) for arg in arg_nodes]
        if isinstance(head, ast.Var):
            if head.name not in env:
                raise UnboundVariable(head.name, head.loc)
            return self._apply_value(env[head.name], args)
        if isinstance(head, ast.Const):
            if head.name == AGENT:
                return self.frame.agent_of[self._single(args, head)]
            if head.name == WORLD:
                return self.frame.world_of[self._single(args, head)]
            if head.name in self.definitions:
                return self._expand(self.definitions[head.name], args)
            return self._lookup(head.name, args)
        return self._apply_value(self.term(head, env), args)

    def _single(self, args, head: ast.Const) -> int:
        if len(args) != 1:
            raise UnsupportedSort(f"{head.name} must be applied to exactly one context")
        return args[0]

    def _apply_value(self, value: Value, args) -> Value:
        if not args:
            return value
        if isinstance(value, tuple) and len(args) == 1:
            return value[args[0]]
        raise UnsupportedSort("only values of sort p can be applied")

    def _expand(self, definition: Definition, args) -> Value:
        params = definition.params
        if len(args) == len(params):
            return self.term(definition.body, dict(zip((name for name, _ in params), args)))
        if len(args) == len(params) - 1 and params[-1][1] == E:
            return tuple(self._expand(definition, list(args) + [e]) for e in range(self.scope.n_e))
        raise UnsupportedSort(f"definition {definition.name} applied to {len(args)} of {len(params)} arguments")

    def _lookup(self, name: str, args) -> Value:
        try:
            table = self.model.table(name)
        except KeyError as exc:
            raise UnboundVariable(name) from exc
        arity = len(table.arg_sorts)
        if len(args) == arity:
            return table.lookup(args, self.scope)
        if len(args) == arity - 1 and table.arg_sorts[-1] == E:
            return tuple(table.lookup(list(args) + [e], self.scope) for e in range(self.scope.n_e))
        raise UnsupportedSort(f"{name} applied to {len(args)} of {arity} arguments")


def eval_char(
    formula: ast.CharNode,
    model: Interpretation,
    env: Valuation,
    ctx: int,
    world: int,
    definitions: Optional[Mapping[str, Definition]] = None,
) -> bool:
    """Truth of a character formula at one (context, world) point."""
    return bool(Evaluator(model, definitions).mask(formula, env) & bit(ctx, world, model.scope))


def eval_meta(
    formula: ast.MetaNode,
    model: Interpretation,
    env: Valuation = _EMPTY,
    definitions: Optional[Mapping[str, Definition]] = None,
) -> bool:
    return Evaluator(model, definitions).meta(formula, env)
