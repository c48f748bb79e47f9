"""
DIMACS CNF reader.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

from ..errors import ParseError, Location

_HEADER = re.compile(r"p\s+cnf\s+(\d+)\s+(\d+)\s*$")


@dataclass(frozen=True)
class CnfProblem:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]


def parse_dimacs(text: str) -> CnfProblem:
    header = None
    clauses: List[Tuple[int, ...]] = []
    pending: List[int] = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(("c", "%")):
            continue
        if header is None:
            header = _HEADER.match(stripped)
            if header is None:
                raise ParseError(f"expected 'p cnf V C' header, got {stripped!r}", Location(number, 1))
            continue
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError as exc:
                raise ParseError(f"bad literal {token!r}", Location(number, 1)) from exc
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header", Location(1, 1))
    if pending:
        clauses.append(tuple(pending))
    num_vars, num_clauses = (int(group) for group in header.groups())
    if len(clauses) != num_clauses:
        raise ParseError(f"header announces {num_clauses} clauses, found {len(clauses)}", Location(1, 1))
    if any(abs(lit) > num_vars for clause in clauses for lit in clause):
        raise ParseError(f"literal exceeds the {num_vars} declared variables", Location(1, 1))
    return CnfProblem(num_vars, tuple(clauses))


def read_dimacs(path: Union[str, Path]) -> CnfProblem:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"))
