"""
Cube-and-conquer over worker processes.

The first ``k`` variables of the static order are fixed in all ``2**k``
polarity combinations; each cube is solved independently. The first
satisfiable cube wins, the problem is unsatisfiable only when every cube is.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .dpll import Solver
from .result import SolverResult, SolverStats

_LOGGER = logging.getLogger(__name__)


def cube_variables(clauses: Sequence[Sequence[int]], count: int) -> List[int]:
    occurring = sorted({abs(lit) for clause in clauses for lit in clause})
    return occurring[:count]


def make_cubes(variables: Sequence[int]) -> List[Tuple[int, ...]]:
    return [
        tuple(var if positive else -var for var, positive in zip(variables, polarity))
        for polarity in product((False, True), repeat=len(variables))
    ]


def _solve_cube(
    num_vars: int,
    clauses: Tuple[Tuple[int, ...], ...],
    cube: Tuple[int, ...],
    budget: Optional[float],
    learning: bool,
) -> SolverResult:
    return Solver(num_vars, clauses + tuple((lit,) for lit in cube), learning=learning, budget=budget).solve()


def solve_parallel(problem, *, jobs: int, budget: Optional[float] = None, learning: bool = True) -> SolverResult:
    clauses = tuple(tuple(clause) for clause in problem.clauses)
    depth = max(1, (jobs - 1).bit_length())
    cubes = make_cubes(cube_variables(clauses, depth))
    _LOGGER.debug("Splitting into %d cubes over %d worker(s)", len(cubes), jobs)
    start = time.monotonic()
    stats = SolverStats()
    timed_out = False
    executor = ProcessPoolExecutor(max_workers=jobs)
    try:
        pending = {
            executor.submit(_solve_cube, problem.num_vars, clauses, cube, budget, learning) for cube in cubes
        }
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                result = future.result()
                stats = stats + result.stats
                if result.is_sat:
                    for other in pending:
                        other.cancel()
                    return SolverResult.sat(result.assignment or {}, _elapsed(stats, start))
                timed_out = timed_out or result.is_timeout
    finally:
        executor.shutdown(wait=False, cancel_futures=True)
    if timed_out:
        _LOGGER.warning("At least one cube ran out of budget")
        return SolverResult.timeout(_elapsed(stats, start))
    return SolverResult.unsat(_elapsed(stats, start))


def _elapsed(stats: SolverStats, start: float) -> SolverStats:
    return SolverStats(
        decisions=stats.decisions,
        propagations=stats.propagations,
        conflicts=stats.conflicts,
        learned=stats.learned,
        elapsed=time.monotonic() - start,
    )
