"""
Grounding: theory + query + scope -> propositional problem.

Every character-level term compiles to a symbolic value made of circuit
literals:

* a term of sort ``w``, ``c`` or ``e`` becomes a one-hot selector, one literal
  per carrier element;
* a character becomes a grid of ``n_c * n_w`` literals (bit layout as in
  :mod:`deonmf.semantics.universe`);
* a term of sort ``p`` becomes a tuple of ``n_e`` grids.

Quantifiers are expanded over the full value universe of their sort.
Definitions are unfolded by substitution at their use sites. Table lookups
with symbolic arguments become case splits over the argument universes.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import ScopeTooLarge, SolverTimeout, UnboundVariable, UnsupportedSort
from ..semantics.conditions import (
    C_AVPV,
    DEFAULT_CONDITIONS,
    NONEMPTY_AV,
    OB_CLOSURE,
    OB_DOWN,
    OB_EXT,
    OB_UP,
    PV_REFL,
    SEM_5AB,
    ConditionSet,
)
from ..semantics.scope import Scope
from ..semantics.universe import Value, check_value, is_subset, iter_universe, universe_size, value_index
from ..surface import ast
from ..surface.sorts import C, E, M, P, W, Sort, sort_name
from ..surface.substitution import substitute_all
from ..surface.theory import AGENT, WORLD, Axiom, SortedTheory
from .circuit import Circuit, Clause
from .varmap import PropVarMap

_LOGGER = logging.getLogger(__name__)

SATISFY = "satisfy"
REFUTE = "refute"
MODES = (SATISFY, REFUTE)

# Guard-memo tag for world sets, which are not values of any sort.
_WORLD_SET = "world-set"
# Fresh compilations between deadline checks.
_POLL_EVERY = 256

Grid = Tuple[int, ...]
Sym = Union[Grid, Tuple[Grid, ...]]
# Bound names map to the binder's sort and the value chosen for it; the sort is
# part of every memo key, so same-named binders of different sorts stay apart.
Env = Mapping[str, Tuple[Sort, Value]]


@dataclass(frozen=True)
class PropProblem:
    varmap: PropVarMap
    clauses: Tuple[Clause, ...]
    num_vars: int
    aux_count: int
    true_var: int
    mode: str
    conditions: ConditionSet

    @property
    def scope(self) -> Scope:
        return self.varmap.scope

    @property
    def primary_count(self) -> int:
        return self.varmap.size


def ground(
    theory: SortedTheory,
    goal: Optional[ast.MetaNode],
    mode: str,
    scope: Scope,
    conditions: ConditionSet = DEFAULT_CONDITIONS,
    *,
    axioms: Optional[Sequence[Axiom]] = None,
    cell_budget: int = 1 << 20,
    symmetry_breaking: bool = False,
    deadline: Optional[float] = None,
) -> PropProblem:
    """Compile the chosen axioms and ``goal`` at ``scope`` into clauses.

    In ``satisfy`` mode the goal is asserted, in ``refute`` mode its negation.
    ``goal=None`` grounds the axioms alone. Past ``deadline`` (a
    :func:`time.monotonic` instant) grounding stops with :class:`SolverTimeout`.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    chosen = theory.axioms if axioms is None else tuple(axioms)
    formulas = [axiom.formula for axiom in chosen] + ([goal] if goal is not None else [])
    PropVarMap.check_budget(theory.signature, scope, cell_budget)
    _check_quantifier_budget(theory, formulas, scope, cell_budget)

    varmap = PropVarMap.build(theory.signature, scope)
    structural: List[Clause] = []
    structural.extend(selector_clauses(varmap))
    frame = frame_clauses(varmap, conditions)
    _LOGGER.debug("Frame conditions contribute %d clauses", len(frame))
    structural.extend(frame)
    if symmetry_breaking:
        if _mentions_carrier_literals(theory, formulas):
            _LOGGER.warning("Symmetry breaking skipped: formulas name concrete worlds or contexts")
        else:
            structural.extend(symmetry_clauses(varmap))

    circuit = Circuit(varmap.size + 1)
    grounder = Grounder(theory, varmap, circuit, deadline)
    for axiom in chosen:
        grounder.poll()
        circuit.assert_lit(grounder.meta(axiom.formula, {}))
    if goal is not None:
        grounder.poll()
        lit = grounder.meta(goal, {})
        circuit.assert_lit(lit if mode == SATISFY else -lit)

    problem = PropProblem(
        varmap=varmap,
        clauses=tuple(structural) + tuple(circuit.clauses),
        num_vars=circuit.num_vars,
        aux_count=circuit.num_vars - varmap.size,
        true_var=circuit.true,
        mode=mode,
        conditions=conditions,
    )
    _LOGGER.info(
        "Grounded %d axiom(s)%s at %s: %d variables (%d auxiliary), %d clauses",
        len(chosen),
        f" and goal ({mode})" if goal is not None else "",
        scope,
        problem.num_vars,
        problem.aux_count,
        len(problem.clauses),
    )
    return problem


def _binder_sorts(formula) -> List[Sort]:
    sorts: List[Sort] = []
    if isinstance(formula, ast.CharNode):
        for node in ast.walk(formula):
            if isinstance(node, ast.BINDERS):
                sorts.append(node.var_sort)
        return sorts
    if isinstance(formula, (ast.Valid, ast.ValidD)):
        return _binder_sorts(formula.formula)
    if isinstance(formula, (ast.ValidCtx, ast.AtCtx)):
        return _binder_sorts(formula.formula) + _binder_sorts(formula.ctx)
    if isinstance(formula, ast.MetaNot):
        return _binder_sorts(formula.body)
    if isinstance(formula, (ast.MetaAnd, ast.MetaImp)):
        return _binder_sorts(formula.left) + _binder_sorts(formula.right)
    if isinstance(formula, ast.MetaForallCtx):
        return _binder_sorts(formula.body)
    return sorts


def _check_quantifier_budget(theory: SortedTheory, formulas, scope: Scope, cell_budget: int) -> None:
    sorts = [sort for formula in formulas for sort in _binder_sorts(formula)]
    for definition in theory.definitions.values():
        sorts.extend(_binder_sorts(definition.body))
    for sort in sorts:
        size = universe_size(sort, scope)
        if size > cell_budget:
            raise ScopeTooLarge(
                f"quantifier over {sort_name(sort)} expands to {size} instances at scope {scope}, budget is {cell_budget}"
            )


def _char_parts(formula) -> List[ast.CharNode]:
    if isinstance(formula, ast.CharNode):
        return [formula]
    if isinstance(formula, (ast.Valid, ast.ValidD)):
        return [formula.formula]
    if isinstance(formula, (ast.ValidCtx, ast.AtCtx)):
        return [formula.formula, formula.ctx]
    if isinstance(formula, ast.MetaNot):
        return _char_parts(formula.body)
    if isinstance(formula, (ast.MetaAnd, ast.MetaImp)):
        return _char_parts(formula.left) + _char_parts(formula.right)
    if isinstance(formula, ast.MetaForallCtx):
        return _char_parts(formula.body)
    return []


def _mentions_carrier_literals(theory: SortedTheory, formulas) -> bool:
    parts = [part for formula in formulas for part in _char_parts(formula)]
    parts.extend(definition.body for definition in theory.definitions.values())
    return any(
        isinstance(node, ast.Lit) and node.lit_sort in (W, C)
        for part in parts
        for node in ast.walk(part)
    )


# Structural clauses --------------------------------------------------------


def _exactly_one(lits: Sequence[int]) -> List[Clause]:
    clauses: List[Clause] = [tuple(lits)]
    for index, left in enumerate(lits):
        for right in lits[index + 1:]:
            clauses.append((-left, -right))
    return clauses


def selector_clauses(varmap: PropVarMap) -> List[Clause]:
    scope = varmap.scope
    clauses: List[Clause] = []
    for c in range(scope.n_c):
        clauses.extend(_exactly_one([varmap.world_of(c, w) for w in range(scope.n_w)]))
        clauses.extend(_exactly_one([varmap.agent_of(c, e) for e in range(scope.n_e)]))
    return clauses


def frame_clauses(varmap: PropVarMap, conditions: ConditionSet) -> List[Clause]:
    """Clauses for every enabled frame condition, in condition order."""
    n_w = varmap.scope.n_w
    worlds = range(n_w)
    subsets = range(1 << n_w)
    ob = varmap.ob
    clauses: List[Clause] = []
    if conditions.is_enabled(C_AVPV):
        clauses.extend((-varmap.av(w, v), varmap.pv(w, v)) for w in worlds for v in worlds)
    if conditions.is_enabled(SEM_5AB):
        clauses.extend((-ob(x, y),) for x in subsets for y in subsets if x & y == 0)
    if conditions.is_enabled(NONEMPTY_AV):
        clauses.extend(tuple(varmap.av(w, v) for v in worlds) for w in worlds)
    if conditions.is_enabled(PV_REFL):
        clauses.extend((varmap.pv(w, w),) for w in worlds)
    if conditions.is_enabled(OB_EXT):
        for x in subsets:
            for y in subsets:
                for z in subsets:
                    if y < z and x & y == x & z:
                        clauses.append((-ob(x, y), ob(x, z)))
                        clauses.append((ob(x, y), -ob(x, z)))
    if conditions.is_enabled(OB_CLOSURE):
        for x in subsets:
            for y in subsets:
                for z in subsets:
                    meet = y & z
                    if y < z and x & meet and meet not in (y, z):
                        clauses.append((-ob(x, y), -ob(x, z), ob(x, meet)))
    if conditions.is_enabled(OB_UP):
        for x in subsets:
            for y in subsets:
                if not is_subset(y, x):
                    continue
                for z in subsets:
                    if z != x and is_subset(x, z):
                        clauses.append((-ob(x, y), ob(z, (z & ~x) | y)))
    if conditions.is_enabled(OB_DOWN):
        for x in subsets:
            for z in subsets:
                for y in subsets:
                    if y != x and is_subset(y, x) and y & z:
                        clauses.append((-ob(x, z), ob(y, z)))
    return clauses


def symmetry_clauses(varmap: PropVarMap) -> List[Clause]:
    """Contexts sorted by their world; worlds numbered in order of first use."""
    scope = varmap.scope
    clauses: List[Clause] = [(-varmap.world_of(0, w),) for w in range(1, scope.n_w)]
    for c in range(1, scope.n_c):
        for w in range(scope.n_w):
            previous = [varmap.world_of(c - 1, w)]
            if w > 0:
                previous.append(varmap.world_of(c - 1, w - 1))
            clauses.append((-varmap.world_of(c, w),) + tuple(previous))
    return clauses


# Formula compilation -------------------------------------------------------


class Grounder:
    def __init__(
        self,
        theory: SortedTheory,
        varmap: PropVarMap,
        circuit: Circuit,
        deadline: Optional[float] = None,
    ) -> None:
        self.theory = theory
        self.varmap = varmap
        self.circuit = circuit
        self.scope = varmap.scope
        self._memo: Dict[Tuple[ast.CharNode, Tuple[Tuple[str, Sort, Value], ...]], Sym] = {}
        self._guard_memo: Dict[Tuple[Sort, Sym], List[Tuple[Value, int]]] = {}
        self.deadline = deadline
        self._started = time.monotonic()
        self._compiled = 0

    def poll(self) -> None:
        if self.deadline is not None and time.monotonic() >= self.deadline:
            raise SolverTimeout(time.monotonic() - self._started)

    # Constants and guards -------------------------------------------------

    def constant(self, sort: Sort, value: Value) -> Sym:
        true, false = self.circuit.true, self.circuit.false
        if sort in (W, C, E):
            return tuple(true if index == value else false for index in range(universe_size(sort, self.scope)))
        if sort == M:
            return tuple(true if value >> index & 1 else false for index in range(self.scope.cells))  # type: ignore[operator]
        if sort == P:
            return tuple(self.constant(M, part) for part in value)  # type: ignore[union-attr]
        raise UnsupportedSort(f"no symbolic encoding for sort {sort_name(sort)}")

    def decode(self, sort: Sort, sym: Sym) -> Optional[Value]:
        """The concrete value of ``sym`` if all its literals are constants."""
        true = self.circuit.true
        if sort == P:
            parts = [self.decode(M, grid) for grid in sym]  # type: ignore[arg-type]
            return None if any(part is None for part in parts) else tuple(parts)  # type: ignore[arg-type]
        if not all(self.circuit.is_const(lit) for lit in sym):  # type: ignore[arg-type]
            return None
        if sort == M:
            return sum(1 << index for index, lit in enumerate(sym) if lit == true)
        chosen = [index for index, lit in enumerate(sym) if lit == true]
        return chosen[0] if len(chosen) == 1 else None

    def _equals(self, sort: Sort, sym: Sym, value: Value) -> int:
        if sort in (W, C, E):
            return sym[value]  # type: ignore[index]
        if sort == M:
            return self.circuit.and_(lit if value >> index & 1 else -lit for index, lit in enumerate(sym))  # type: ignore[operator, arg-type]
        return self.circuit.and_(self._equals(M, grid, part) for grid, part in zip(sym, value))  # type: ignore[arg-type]

    def guards(self, sort: Sort, sym: Sym) -> List[Tuple[Value, int]]:
        """(value, guard) pairs: ``sym`` equals ``value`` iff ``guard`` holds."""
        key = (sort, sym)
        cached = self._guard_memo.get(key)
        if cached is not None:
            return cached
        concrete = self.decode(sort, sym)
        if concrete is not None:
            result = [(concrete, self.circuit.true)]
        else:
            result = []
            for value in iter_universe(sort, self.scope):
                guard = self._equals(sort, sym, value)
                if guard != self.circuit.false:
                    result.append((value, guard))
        self._guard_memo[key] = result
        return result

    # Character level ------------------------------------------------------

    def compile(self, node: ast.CharNode, env: Env) -> Sym:
        try:
            key = (node, tuple(sorted((name, *env[name]) for name in ast.free_vars(node))))
        except KeyError as exc:
            raise UnboundVariable(str(exc.args[0]), node.loc) from exc
        cached = self._memo.get(key)
        if cached is None:
            self._compiled += 1
            if self._compiled % _POLL_EVERY == 0:
                self.poll()
            cached = self._compile(node, env)
            self._memo[key] = cached
        return cached

    def grid(self, node: ast.CharNode, env: Env) -> Grid:
        return self.compile(node, env)  # type: ignore[return-value]

    def _compile(self, node: ast.CharNode, env: Env) -> Sym:
        circuit = self.circuit
        cells = range(self.scope.cells)
        if isinstance(node, (ast.Var, ast.Const, ast.App)):
            return self._application(node, env)
        if isinstance(node, ast.Lit):
            check_value(node.lit_sort, node.value, self.scope)
            return self.constant(node.lit_sort, node.value)
        if isinstance(node, ast.Top):
            return (circuit.true,) * self.scope.cells
        if isinstance(node, ast.Bottom):
            return (circuit.false,) * self.scope.cells
        if isinstance(node, ast.Not):
            return tuple(-lit for lit in self.grid(node.body, env))
        if isinstance(node, ast.BINARY_OPS):
            left, right = self.grid(node.left, env), self.grid(node.right, env)
            if isinstance(node, ast.And):
                return tuple(circuit.and_((left[i], right[i])) for i in cells)
            if isinstance(node, ast.Or):
                return tuple(circuit.or_((left[i], right[i])) for i in cells)
            if isinstance(node, ast.Imp):
                return tuple(circuit.implies(left[i], right[i]) for i in cells)
            return tuple(circuit.iff(left[i], right[i]) for i in cells)
        if isinstance(node, (ast.BoxA, ast.DiaA, ast.BoxP, ast.DiaP)):
            access = self.varmap.av if isinstance(node, (ast.BoxA, ast.DiaA)) else self.varmap.pv
            universal = isinstance(node, (ast.BoxA, ast.BoxP))
            return self._modal(access, universal, self.grid(node.body, env))
        if isinstance(node, ast.BoxD):
            lit = self.indexical(self.grid(node.body, env))
            return (lit,) * self.scope.cells
        if isinstance(node, ast.ObDyadic):
            return self._dyadic(self.grid(node.body, env), self.grid(node.condition, env))
        if isinstance(node, (ast.ObA, ast.ObI)):
            access = self.varmap.av if isinstance(node, ast.ObA) else self.varmap.pv
            return self._monadic(access, self.grid(node.body, env))
        if isinstance(node, ast.BINDERS):
            instances = [
                self.grid(node.body, {**env, node.var: (node.var_sort, value)})
                for value in iter_universe(node.var_sort, self.scope)
            ]
            combine = circuit.and_ if isinstance(node, ast.Forall) else circuit.or_
            return tuple(combine(instance[i] for instance in instances) for i in cells)
        raise TypeError(f"not a character formula: {node!r}")

    def _row(self, grid: Grid, c: int) -> Grid:
        n_w = self.scope.n_w
        return grid[c * n_w:(c + 1) * n_w]

    def _modal(self, access, universal: bool, body: Grid) -> Grid:
        circuit = self.circuit
        n_w = self.scope.n_w
        result = []
        for c in range(self.scope.n_c):
            row = self._row(body, c)
            for w in range(n_w):
                if universal:
                    result.append(circuit.and_(circuit.implies(access(w, v), row[v]) for v in range(n_w)))
                else:
                    result.append(circuit.or_(circuit.and_((access(w, v), row[v])) for v in range(n_w)))
        return tuple(result)

    def _world_set_guards(self, lits: Sequence[int]) -> List[Tuple[int, int]]:
        key = (_WORLD_SET, tuple(lits))
        cached = self._guard_memo.get(key)
        if cached is not None:
            return cached  # type: ignore[return-value]
        circuit = self.circuit
        if all(circuit.is_const(lit) for lit in lits):
            result = [(sum(1 << w for w, lit in enumerate(lits) if lit == circuit.true), circuit.true)]
        else:
            result = []
            for subset in range(1 << len(lits)):
                guard = circuit.and_(lit if subset >> w & 1 else -lit for w, lit in enumerate(lits))
                if guard != circuit.false:
                    result.append((subset, guard))
        self._guard_memo[key] = result  # type: ignore[assignment]
        return result

    def _dyadic(self, body: Grid, condition: Grid) -> Grid:
        circuit = self.circuit
        result: List[int] = []
        for c in range(self.scope.n_c):
            terms = [
                circuit.and_((guard_x, guard_y, self.varmap.ob(x, y)))
                for x, guard_x in self._world_set_guards(self._row(condition, c))
                for y, guard_y in self._world_set_guards(self._row(body, c))
            ]
            result.extend([circuit.or_(terms)] * self.scope.n_w)
        return tuple(result)

    def _monadic(self, access, body: Grid) -> Grid:
        circuit = self.circuit
        n_w = self.scope.n_w
        result: List[int] = []
        for c in range(self.scope.n_c):
            contents = self._world_set_guards(self._row(body, c))
            for w in range(n_w):
                reachable = self._world_set_guards([access(w, v) for v in range(n_w)])
                terms = [
                    circuit.and_((guard_x, guard_y, self.varmap.ob(x, y)))
                    for x, guard_x in reachable
                    for y, guard_y in contents
                    if x & ~y
                ]
                result.append(circuit.or_(terms))
        return tuple(result)

    def indexical(self, grid: Grid) -> int:
        """Literal for truth at every context's own world."""
        circuit = self.circuit
        n_w = self.scope.n_w
        return circuit.and_(
            circuit.or_(circuit.and_((self.varmap.world_of(c, w), grid[c * n_w + w])) for w in range(n_w))
            for c in range(self.scope.n_c)
        )

    # Applications ---------------------------------------------------------

    def _application(self, node: ast.CharNode, env: Env) -> Sym:
        head, arg_nodes = ast.spine(node)
        if isinstance(head, ast.Const) and head.name in self.theory.definitions:
            return self._unfold(head.name, arg_nodes, env)
        args = [self.compile(arg, env) for arg in arg_nodes]
        if isinstance(head, ast.Var):
            if head.name not in env:
                raise UnboundVariable(head.name, head.loc)
            sort, value = env[head.name]
            return self._apply_sym(self.constant(sort, value), args)
        if isinstance(head, ast.Const):
            if head.name in (AGENT, WORLD):
                return self._feature(head, args)
            return self._lookup(head.name, args)
        return self._apply_sym(self.compile(head, env), args)

    def _feature(self, head: ast.Const, args: List[Sym]) -> Sym:
        if len(args) != 1:
            raise UnsupportedSort(f"{head.name} must be applied to exactly one context")
        selector = args[0]
        circuit = self.circuit
        if head.name == AGENT:
            size, var_of = self.scope.n_e, self.varmap.agent_of
        else:
            size, var_of = self.scope.n_w, self.varmap.world_of
        return tuple(
            circuit.or_(circuit.and_((selector[c], var_of(c, value))) for c in range(self.scope.n_c))
            for value in range(size)
        )

    def _apply_sym(self, value: Sym, args: List[Sym]) -> Sym:
        if not args:
            return value
        if len(args) != 1:
            raise UnsupportedSort("only values of sort p can be applied")
        circuit = self.circuit
        return tuple(
            circuit.or_(circuit.and_((guard, value[e][i])) for e, guard in self.guards(E, args[0]))  # type: ignore[index]
            for i in range(self.scope.cells)
        )

    def _unfold(self, name: str, arg_nodes: List[ast.CharNode], env: Env) -> Sym:
        definition = self.theory.definitions[name]
        params = [param for param, _ in definition.params]
        if len(arg_nodes) == len(params):
            return self.compile(substitute_all(definition.body, dict(zip(params, arg_nodes))), env)
        if len(arg_nodes) == len(params) - 1 and definition.params[-1][1] == E:
            return tuple(
                self._unfold(name, list(arg_nodes) + [ast.Lit(E, e, sort=E)], env) for e in range(self.scope.n_e)
            )
        raise UnsupportedSort(f"definition {name} applied to {len(arg_nodes)} of {len(params)} arguments")

    def _lookup(self, name: str, args: List[Sym]) -> Sym:
        try:
            block = self.varmap.block(name)
        except KeyError as exc:
            raise UnboundVariable(name) from exc
        arity = len(block.arg_sorts)
        if len(args) == arity - 1 and block.arg_sorts[-1] == E:
            return tuple(
                self._lookup(name, args + [self.constant(E, e)]) for e in range(self.scope.n_e)
            )
        if len(args) != arity:
            raise UnsupportedSort(f"{name} applied to {len(args)} of {arity} arguments")
        circuit = self.circuit
        choices = [self.guards(sort, sym) for sort, sym in zip(block.arg_sorts, args)]
        rows = []
        for combo in product(*choices):
            guard = circuit.and_(g for _, g in combo)
            if guard == circuit.false:
                continue
            row = 0
            for sort, (value, _) in zip(block.arg_sorts, combo):
                row = row * universe_size(sort, self.scope) + value_index(sort, value, self.scope)
            rows.append((guard, row))
        return tuple(
            circuit.or_(circuit.and_((guard, self.varmap.table(name, row, i))) for guard, row in rows)
            for i in range(self.scope.cells)
        )

    # Meta level -----------------------------------------------------------

    def meta(self, formula: ast.MetaNode, env: Env) -> int:
        circuit = self.circuit
        n_w = self.scope.n_w
        if isinstance(formula, ast.Valid):
            return circuit.and_(self.grid(formula.formula, env))
        if isinstance(formula, ast.ValidD):
            return self.indexical(self.grid(formula.formula, env))
        if isinstance(formula, ast.ValidCtx):
            grid = self.grid(formula.formula, env)
            selector = self.compile(formula.ctx, env)
            return circuit.and_(
                circuit.implies(selector[c], circuit.and_(self._row(grid, c)))  # type: ignore[index]
                for c in range(self.scope.n_c)
            )
        if isinstance(formula, ast.AtCtx):
            grid = self.grid(formula.formula, env)
            selector = self.compile(formula.ctx, env)
            return circuit.and_(
                circuit.implies(
                    selector[c],  # type: ignore[index]
                    circuit.or_(circuit.and_((self.varmap.world_of(c, w), grid[c * n_w + w])) for w in range(n_w)),
                )
                for c in range(self.scope.n_c)
            )
        if isinstance(formula, ast.MetaNot):
            return -self.meta(formula.body, env)
        if isinstance(formula, ast.MetaAnd):
            return circuit.and_((self.meta(formula.left, env), self.meta(formula.right, env)))
        if isinstance(formula, ast.MetaImp):
            return circuit.implies(self.meta(formula.left, env), self.meta(formula.right, env))
        if isinstance(formula, ast.MetaForallCtx):
            return circuit.and_(self.meta(formula.body, {**env, formula.var: (C, c)}) for c in range(self.scope.n_c))
        raise TypeError(f"not a meta formula: {formula!r}")
