"""
Precedence-aware printer; ``parse(print(f))`` is structurally equal to ``f``.
"""

from __future__ import annotations

import re
from typing import List, Tuple

from . import ast
from .sorts import sort_name
from .theory import BUILTIN_CONSTANTS, Theory

# Binding strength, loosest first.
QUANT, IFF, IMP, OR, AND, UNARY, APP, ATOM = range(8)

_MODAL_NAMES = {
    ast.BoxA: "boxA",
    ast.DiaA: "diaA",
    ast.BoxP: "boxP",
    ast.DiaP: "diaP",
    ast.BoxD: "boxD",
    ast.ObA: "Oa",
    ast.ObI: "Oi",
}

_BARE_ATTRIBUTE = re.compile(r"^[A-Za-z0-9_.,=-]+$")


def print_formula(node: ast.CharNode) -> str:
    return _char(node, QUANT)


def print_meta(node: ast.MetaNode) -> str:
    return _meta(node, 0)


def print_theory(theory: Theory) -> str:
    builtin = {name for name, _ in BUILTIN_CONSTANTS}
    lines: List[str] = []
    for name, sort in theory.aliases:
        lines.append(f"sorts {name} = {sort_name(sort)}")
    for name, sort in theory.signature.items():
        if name not in builtin:
            lines.append(f"consts {name} : {sort_name(sort)}")
    for definition in theory.definitions:
        params = ", ".join(f"{name}:{sort_name(sort)}" for name, sort in definition.params)
        head = f"{definition.name}({params})" if params else definition.name
        lines.append(f"def {head} := {print_formula(definition.body)}")
    for axiom in theory.axioms:
        lines.append(f"axiom {axiom.name} : {print_meta(axiom.formula)}")
    for goal in theory.goals:
        attributes = "".join(f" [{key} = {_attribute_value(value)}]" for key, value in goal.attributes)
        lines.append(f"goal {goal.name}{attributes} : {print_meta(goal.formula)}")
    return "\n".join(lines) + "\n"


def _attribute_value(value: str) -> str:
    return value if _BARE_ATTRIBUTE.match(value) else f'"{value}"'


def _wrap(text: str, level: int, minimum: int) -> str:
    return f"({text})" if level < minimum else text


def _char(node: ast.CharNode, minimum: int) -> str:
    if isinstance(node, (ast.Const, ast.Var)):
        return node.name
    if isinstance(node, ast.Lit):
        return _literal(node)
    if isinstance(node, ast.Top):
        return "true"
    if isinstance(node, ast.Bottom):
        return "false"
    if isinstance(node, ast.App):
        return _wrap(f"{_char(node.fun, APP)} {_char(node.arg, ATOM)}", APP, minimum)
    if isinstance(node, ast.Not):
        return _wrap(f"~{_char(node.body, UNARY)}", UNARY, minimum)
    if type(node) in _MODAL_NAMES:
        return _wrap(f"{_MODAL_NAMES[type(node)]} {_char(node.body, UNARY)}", UNARY, minimum)
    if isinstance(node, ast.ObDyadic):
        return _wrap(f"O<{_char(node.body, AND)} | {_char(node.condition, QUANT)}>", UNARY, minimum)
    if isinstance(node, ast.And):
        return _wrap(f"{_char(node.left, AND)} & {_char(node.right, UNARY)}", AND, minimum)
    if isinstance(node, ast.Or):
        return _wrap(f"{_char(node.left, OR)} | {_char(node.right, AND)}", OR, minimum)
    if isinstance(node, ast.Imp):
        return _wrap(f"{_char(node.left, OR)} -> {_char(node.right, IMP)}", IMP, minimum)
    if isinstance(node, ast.Iff):
        return _wrap(f"{_char(node.left, IMP)} <-> {_char(node.right, IMP)}", IFF, minimum)
    if isinstance(node, ast.BINDERS):
        keyword = "forall" if isinstance(node, ast.Forall) else "exists"
        binders, body = _collect_binders(node)
        text = f"{keyword} {', '.join(binders)}. {_char(body, QUANT)}"
        return _wrap(text, QUANT, minimum)
    raise TypeError(f"cannot print {type(node).__name__}")


def _collect_binders(node: ast.CharNode) -> Tuple[List[str], ast.CharNode]:
    kind = type(node)
    binders: List[str] = []
    while type(node) is kind:
        binders.append(f"{node.var}:{sort_name(node.var_sort)}")
        node = node.body
    return binders, node


def _literal(node: ast.Lit) -> str:
    prefix = sort_name(node.lit_sort)
    if isinstance(node.value, tuple):
        return f"@{prefix}:[{','.join(str(part) for part in node.value)}]"
    return f"@{prefix}:{node.value}"


def _meta(node: ast.MetaNode, minimum: int) -> str:
    if isinstance(node, ast.MetaForallCtx):
        names = [node.var]
        body = node.body
        while isinstance(body, ast.MetaForallCtx):
            names.append(body.var)
            body = body.body
        return _wrap(f"forall {', '.join(names)}:c. {_meta(body, 0)}", 0, minimum)
    if isinstance(node, ast.MetaImp):
        return _wrap(f"{_meta(node.left, 2)} => {_meta(node.right, 0)}", 1, minimum)
    if isinstance(node, ast.MetaAnd):
        return _wrap(f"{_meta(node.left, 2)} && {_meta(node.right, 3)}", 2, minimum)
    if isinstance(node, ast.MetaNot):
        return f"!{_meta(node.body, 3)}"
    if isinstance(node, ast.Valid):
        return f"valid {_char(node.formula, ATOM)}"
    if isinstance(node, ast.ValidD):
        return f"validD {_char(node.formula, ATOM)}"
    if isinstance(node, ast.AtCtx):
        return f"validAt {_char(node.formula, ATOM)} {_char(node.ctx, ATOM)}"
    if isinstance(node, ast.ValidCtx):
        return f"validCtx {_char(node.formula, ATOM)} {_char(node.ctx, ATOM)}"
    raise TypeError(f"cannot print {type(node).__name__}")
