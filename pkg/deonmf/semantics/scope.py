"""
Cardinality bounds for bounded search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator

from ..errors import ConfigError

_KEYS = ("c", "e", "w")


@dataclass(frozen=True, order=True)
class Scope:
    """Numbers of contexts, individuals and worlds (each at least 1)."""

    n_c: int = 1
    n_e: int = 1
    n_w: int = 1

    def __post_init__(self) -> None:
        for key, value in zip(_KEYS, self.as_tuple()):
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"scope bound {key}={value!r} must be a positive integer")

    @classmethod
    def parse(cls, text: str) -> "Scope":
        """Parse ``c=i,e=j,w=k``; omitted keys default to 1."""
        values: Dict[str, int] = {}
        for part in filter(None, (chunk.strip() for chunk in text.split(","))):
            key, sep, raw = part.partition("=")
            key = key.strip()
            if not sep or key not in _KEYS:
                raise ConfigError(f"malformed scope component {part!r} (expected c=i, e=j or w=k)")
            if key in values:
                raise ConfigError(f"scope key {key!r} given twice")
            try:
                values[key] = int(raw.strip())
            except ValueError as exc:
                raise ConfigError(f"scope bound {key}={raw.strip()!r} is not an integer") from exc
        return cls(n_c=values.get("c", 1), n_e=values.get("e", 1), n_w=values.get("w", 1))

    def as_tuple(self) -> tuple:
        return (self.n_c, self.n_e, self.n_w)

    @property
    def cells(self) -> int:
        """Bits in one character: one per (context, world) pair."""
        return self.n_c * self.n_w

    def covers(self, other: "Scope") -> bool:
        return all(mine >= theirs for mine, theirs in zip(self.as_tuple(), other.as_tuple()))

    def spec(self) -> str:
        return f"c={self.n_c},e={self.n_e},w={self.n_w}"

    def to_payload(self) -> Dict[str, int]:
        return {"c": self.n_c, "e": self.n_e, "w": self.n_w}

    def __str__(self) -> str:
        return f"({self.n_c},{self.n_e},{self.n_w})"


def scopes_up_to(ceiling: Scope) -> Iterator[Scope]:
    """Every scope below ``ceiling``, smallest total size first (ties by tuple order)."""
    candidates = [
        Scope(c, e, w)
        for c, e, w in product(range(1, ceiling.n_c + 1), range(1, ceiling.n_e + 1), range(1, ceiling.n_w + 1))
    ]
    candidates.sort(key=lambda scope: (scope.n_c * scope.n_e * scope.n_w, sum(scope.as_tuple()), scope.as_tuple()))
    return iter(candidates)
