"""
Brute-force enumeration of frames and interpretations.

Nothing here touches the grounder or the solver: every candidate is judged by
:mod:`deonmf.semantics.conditions` and the reference evaluator alone. Only
tiny scopes and signatures are feasible.
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Iterator, List, Optional, Sequence

from ..surface import ast
from ..surface.theory import Axiom, BUILTIN_CONSTANTS, SortedTheory
from .canonical import canonical_classes
from .conditions import DEFAULT_CONDITIONS, SEM_5AB, ConditionSet, frame_ok
from .evaluator import Evaluator
from .frame import Frame, Interpretation, Table, table_shape, table_size
from .scope import Scope

_LOGGER = logging.getLogger(__name__)

SATISFY = "satisfy"
REFUTE = "refute"


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _ob_rows(scope: Scope, conditions: ConditionSet) -> List[List[int]]:
    subsets = 1 << scope.n_w
    rows = []
    for x in range(subsets):
        if conditions.is_enabled(SEM_5AB):
            allowed = sum(1 << y for y in range(subsets) if x & y)
            rows.append(sorted(_submasks(allowed)))
        else:
            rows.append(list(range(1 << subsets)))
    return rows


def enumerate_frames(scope: Scope, conditions: ConditionSet = DEFAULT_CONDITIONS) -> Iterator[Frame]:
    """Every frame at ``scope`` passing ``conditions``."""
    sets = range(1 << scope.n_w)
    for av, pv, ob, world_of, agent_of in product(
        product(sets, repeat=scope.n_w),
        product(sets, repeat=scope.n_w),
        product(*_ob_rows(scope, conditions)),
        product(range(scope.n_w), repeat=scope.n_c),
        product(range(scope.n_e), repeat=scope.n_c),
    ):
        frame = Frame(scope, av, pv, ob, world_of, agent_of)
        if frame_ok(frame, conditions):
            yield frame


def count_frames(scope: Scope, conditions: ConditionSet = DEFAULT_CONDITIONS) -> int:
    return sum(1 for _ in enumerate_frames(scope, conditions))


def enumerate_interpretations(
    theory: SortedTheory, scope: Scope, conditions: ConditionSet = DEFAULT_CONDITIONS
) -> Iterator[Interpretation]:
    builtin = {name for name, _ in BUILTIN_CONSTANTS}
    shapes = [
        (name, table_shape(sort))
        for name, sort in sorted(theory.signature.items())
        if name not in builtin
    ]
    characters = range(1 << scope.cells)
    table_choices = [
        [Table(shape, cells) for cells in product(characters, repeat=table_size(shape, scope))]
        for _, shape in shapes
    ]
    for frame in enumerate_frames(scope, conditions):
        for tables in product(*table_choices):
            yield Interpretation(frame, tuple((name, table) for (name, _), table in zip(shapes, tables)))


def naive_models(
    theory: SortedTheory,
    goal: Optional[ast.MetaNode],
    mode: str,
    scope: Scope,
    conditions: ConditionSet = DEFAULT_CONDITIONS,
    axioms: Optional[Sequence[Axiom]] = None,
) -> List[Interpretation]:
    """Canonical representatives of all models of ``axioms`` that satisfy or refute ``goal``."""
    chosen = theory.axioms if axioms is None else tuple(axioms)
    found = []
    for model in enumerate_interpretations(theory, scope, conditions):
        evaluator = Evaluator(model, theory.definitions)
        if not all(evaluator.meta(axiom.formula) for axiom in chosen):
            continue
        if goal is not None and evaluator.meta(goal) != (mode == SATISFY):
            continue
        found.append(model)
    classes = canonical_classes(found)
    _LOGGER.debug("Naive enumeration at %s: %d models, %d classes", scope, len(found), len(classes))
    return classes
