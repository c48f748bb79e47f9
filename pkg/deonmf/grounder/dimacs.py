"""
DIMACS CNF export with a comment block naming every primary variable.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Union

from .encoder import PropProblem


def emit(problem: PropProblem) -> str:
    varmap = problem.varmap
    lines: List[str] = [
        "c deon-mf grounding",
        f"c scope {varmap.scope.spec()}",
        f"c mode {problem.mode}",
        "c conditions " + ",".join(problem.conditions.enabled),
    ]
    lines.extend(f"c var {var} {cell}" for var, cell in varmap.cells())
    lines.append(f"c var {problem.true_var} TRUE")
    if problem.aux_count > 1:
        lines.append(f"c aux {problem.true_var + 1}..{problem.num_vars}")
    lines.append(f"p cnf {problem.num_vars} {len(problem.clauses)}")
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in problem.clauses)
    return "\n".join(lines) + "\n"


def write(problem: PropProblem, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.write_text(emit(problem), encoding="utf-8")
    return target
