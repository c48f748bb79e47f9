"""
Hash-consed AND/OR gates over literals with Tseitin clauses.

Literals are non-zero integers, negative for negation. A dedicated variable
is fixed to true by a unit clause so that constants are ordinary literals:
``circuit.true`` and ``circuit.false == -circuit.true``.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Tuple

Clause = Tuple[int, ...]


class Circuit:
    def __init__(self, first_free: int) -> None:
        self.true = first_free
        self.false = -first_free
        self.next_var = first_free + 1
        self.clauses: List[Clause] = [(self.true,)]
        self._gates: Dict[Tuple[int, ...], int] = {}

    @property
    def num_vars(self) -> int:
        return self.next_var - 1

    def is_const(self, lit: int) -> bool:
        return lit == self.true or lit == self.false

    def and_(self, lits: Iterable[int]) -> int:
        inputs = set()
        for lit in lits:
            if lit == self.false:
                return self.false
            if lit == self.true:
                continue
            if -lit in inputs:
                return self.false
            inputs.add(lit)
        if not inputs:
            return self.true
        if len(inputs) == 1:
            return next(iter(inputs))
        key = tuple(sorted(inputs))
        gate = self._gates.get(key)
        if gate is None:
            gate = self.next_var
            self.next_var += 1
            self._gates[key] = gate
            for lit in key:
                self.clauses.append((-gate, lit))
            self.clauses.append((gate,) + tuple(-lit for lit in key))
        return gate

    def or_(self, lits: Iterable[int]) -> int:
        return -self.and_(-lit for lit in lits)

    def implies(self, left: int, right: int) -> int:
        return self.or_((-left, right))

    def iff(self, left: int, right: int) -> int:
        return self.and_((self.implies(left, right), self.implies(right, left)))

    def add_clause(self, lits: Iterable[int]) -> None:
        clause = []
        for lit in lits:
            if lit == self.true:
                return
            if lit != self.false and lit not in clause:
                clause.append(lit)
        self.clauses.append(tuple(clause))

    def assert_lit(self, lit: int) -> None:
        self.add_clause((lit,))
