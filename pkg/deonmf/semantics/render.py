"""
Human-readable and JSON renderings of an interpretation.

Both renderings are deterministic: carriers are listed in index order and
table rows in argument order, so a canonical model always renders to the
same text.
"""

from __future__ import annotations

from typing import Any, Dict, List

from ..surface.sorts import C, E, M, P, W, Sort
from .conditions import world_set
from .frame import Interpretation, iter_arguments
from .scope import Scope
from .universe import Value, members


def point_set(mask: int, scope: Scope) -> str:
    points = [f"c{index // scope.n_w + 1}w{index % scope.n_w + 1}" for index in members(mask)]
    return "{" + ",".join(points) + "}"


def format_value(sort: Sort, value: Value, scope: Scope) -> str:
    if sort == W:
        return f"w{value + 1}"  # type: ignore[operator]
    if sort == C:
        return f"c{value + 1}"  # type: ignore[operator]
    if sort == E:
        return f"e{value + 1}"  # type: ignore[operator]
    if sort == M:
        return point_set(value, scope)  # type: ignore[arg-type]
    if sort == P:
        parts = (f"e{e + 1}:{point_set(part, scope)}" for e, part in enumerate(value))  # type: ignore[arg-type]
        return "[" + " ".join(parts) + "]"
    return str(value)


def model_payload(model: Interpretation) -> Dict[str, Any]:
    frame = model.frame
    scope = model.scope
    worlds = range(scope.n_w)
    subsets = range(1 << scope.n_w)
    tables: Dict[str, Dict[str, str]] = {}
    for name, table in model.tables:
        rows: Dict[str, str] = {}
        for position, args in enumerate(iter_arguments(table.arg_sorts, scope)):
            if table.cells[position]:
                key = " ".join(format_value(sort, value, scope) for sort, value in zip(table.arg_sorts, args))
                rows[key or "-"] = point_set(table.cells[position], scope)
        tables[name] = rows
    return {
        "scope": scope.to_payload(),
        "av": {f"w{w + 1}": world_set(frame.av[w]) for w in worlds},
        "pv": {f"w{w + 1}": world_set(frame.pv[w]) for w in worlds},
        "ob": {world_set(x): [world_set(y) for y in frame.ob_sets(x)] for x in subsets},
        "worldOf": {f"c{c + 1}": f"w{w + 1}" for c, w in enumerate(frame.world_of)},
        "agentOf": {f"c{c + 1}": f"e{e + 1}" for c, e in enumerate(frame.agent_of)},
        "tables": tables,
    }


def render_text(model: Interpretation) -> str:
    payload = model_payload(model)
    scope = model.scope
    lines: List[str] = [
        f"scope: {scope.spec()}",
        "worlds: " + " ".join(f"w{w + 1}" for w in range(scope.n_w)),
        "contexts: " + " ".join(f"c{c + 1}" for c in range(scope.n_c)),
        "individuals: " + " ".join(f"e{e + 1}" for e in range(scope.n_e)),
        "av: " + "; ".join(f"{w} -> {targets}" for w, targets in payload["av"].items()),
        "pv: " + "; ".join(f"{w} -> {targets}" for w, targets in payload["pv"].items()),
        "ob:",
    ]
    for condition, contents in payload["ob"].items():
        lines.append(f"  {condition} -> {{{', '.join(contents)}}}")
    lines.append("worldOf: " + "; ".join(f"{c} -> {w}" for c, w in payload["worldOf"].items()))
    lines.append("agentOf: " + "; ".join(f"{c} -> {e}" for c, e in payload["agentOf"].items()))
    for name, rows in payload["tables"].items():
        if not rows:
            lines.append(f"{name}: nowhere")
            continue
        if list(rows) == ["-"]:
            lines.append(f"{name}: {rows['-']}")
            continue
        lines.append(f"{name}: (unlisted arguments: nowhere)")
        for args, points in rows.items():
            lines.append(f"  {args} -> {points}")
    return "\n".join(lines)
