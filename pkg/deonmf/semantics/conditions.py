"""
Frame conditions on av, pv and ob.

Every condition is named and can be switched off; the active selection is a
:class:`ConditionSet`, which is plain configuration and round-trips through
JSON.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from ..errors import ConfigError
from .frame import Frame, Interpretation
from .universe import is_subset, members

_LOGGER = logging.getLogger(__name__)

Witness = Tuple[Tuple[str, str], ...]

C_AVPV = "C-avpv"
SEM_5AB = "sem_5ab"
NONEMPTY_AV = "sem-nonempty-av"
PV_REFL = "sem-pv-refl"
OB_EXT = "sem-ob-ext"
OB_CLOSURE = "sem-ob-closure"
OB_UP = "sem-ob-up"
OB_DOWN = "sem-ob-down"

CONDITION_NAMES: Tuple[str, ...] = (C_AVPV, SEM_5AB, NONEMPTY_AV, PV_REFL, OB_EXT, OB_CLOSURE, OB_UP, OB_DOWN)

# Conditions that corpus runs may not disable.
LOAD_BEARING = frozenset({C_AVPV, SEM_5AB})

DESCRIPTIONS: Mapping[str, str] = {
    C_AVPV: "av(w) is a subset of pv(w)",
    SEM_5AB: "Y in ob(X) implies X and Y intersect",
    NONEMPTY_AV: "av(w) is non-empty",
    PV_REFL: "w is in pv(w)",
    OB_EXT: "X&Y = X&Z implies (Y in ob(X) iff Z in ob(X))",
    OB_CLOSURE: "Y, Z in ob(X) and X&Y&Z non-empty implies Y&Z in ob(X)",
    OB_UP: "Y in ob(X), Y <= X <= Z implies (Z-X)|Y in ob(Z)",
    OB_DOWN: "Y <= X, Z in ob(X), Y&Z non-empty implies Z in ob(Y)",
}


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: Witness

    def __str__(self) -> str:
        detail = ", ".join(f"{key}={value}" for key, value in self.witness)
        return f"{self.condition} violated at {detail}"

    def to_payload(self) -> Dict[str, object]:
        return {"condition": self.condition, "witness": dict(self.witness)}


def world_set(mask: int) -> str:
    return "{" + ",".join(f"w{w + 1}" for w in members(mask)) + "}"


def _subsets(frame: Frame) -> range:
    return range(1 << frame.scope.n_w)


def _check_avpv(frame: Frame) -> Iterator[Witness]:
    for w in range(frame.scope.n_w):
        if not is_subset(frame.av[w], frame.pv[w]):
            yield (("w", f"w{w + 1}"),)


def _check_5ab(frame: Frame) -> Iterator[Witness]:
    for x in _subsets(frame):
        for y in frame.ob_sets(x):
            if x & y == 0:
                yield (("X", world_set(x)), ("Y", world_set(y)))


def _check_nonempty_av(frame: Frame) -> Iterator[Witness]:
    for w in range(frame.scope.n_w):
        if frame.av[w] == 0:
            yield (("w", f"w{w + 1}"),)


def _check_pv_refl(frame: Frame) -> Iterator[Witness]:
    for w in range(frame.scope.n_w):
        if not frame.pv[w] >> w & 1:
            yield (("w", f"w{w + 1}"),)


def _check_ext(frame: Frame) -> Iterator[Witness]:
    for x in _subsets(frame):
        for y in _subsets(frame):
            for z in _subsets(frame):
                if x & y == x & z and frame.obliges(x, y) != frame.obliges(x, z):
                    yield (("X", world_set(x)), ("Y", world_set(y)), ("Z", world_set(z)))


def _check_closure(frame: Frame) -> Iterator[Witness]:
    for x in _subsets(frame):
        for y in frame.ob_sets(x):
            for z in frame.ob_sets(x):
                if x & y & z and not frame.obliges(x, y & z):
                    yield (("X", world_set(x)), ("Y", world_set(y)), ("Z", world_set(z)))


def _check_up(frame: Frame) -> Iterator[Witness]:
    for x in _subsets(frame):
        for y in frame.ob_sets(x):
            if not is_subset(y, x):
                continue
            for z in _subsets(frame):
                if is_subset(x, z) and not frame.obliges(z, (z & ~x) | y):
                    yield (("X", world_set(x)), ("Y", world_set(y)), ("Z", world_set(z)))


def _check_down(frame: Frame) -> Iterator[Witness]:
    for x in _subsets(frame):
        for z in frame.ob_sets(x):
            for y in _subsets(frame):
                if is_subset(y, x) and y & z and not frame.obliges(y, z):
                    yield (("X", world_set(x)), ("Y", world_set(y)), ("Z", world_set(z)))


CHECKS: Mapping[str, Callable[[Frame], Iterator[Witness]]] = {
    C_AVPV: _check_avpv,
    SEM_5AB: _check_5ab,
    NONEMPTY_AV: _check_nonempty_av,
    PV_REFL: _check_pv_refl,
    OB_EXT: _check_ext,
    OB_CLOSURE: _check_closure,
    OB_UP: _check_up,
    OB_DOWN: _check_down,
}


@dataclass(frozen=True)
class ConditionSet:
    """On/off flags for every named frame condition, all on by default."""

    flags: Tuple[Tuple[str, bool], ...] = field(default_factory=lambda: tuple((name, True) for name in CONDITION_NAMES))

    def __post_init__(self) -> None:
        names = [name for name, _ in self.flags]
        unknown = sorted(set(names) - set(CONDITION_NAMES))
        if unknown:
            raise ConfigError(f"unknown frame condition(s): {', '.join(unknown)}")
        if sorted(names) != sorted(CONDITION_NAMES):
            raise ConfigError("a condition set must list every frame condition exactly once")

    @property
    def enabled(self) -> Tuple[str, ...]:
        return tuple(name for name, on in self.flags if on)

    def is_enabled(self, name: str) -> bool:
        return dict(self.flags)[name]

    def toggled(self, enable: Iterable[str] = (), disable: Iterable[str] = ()) -> "ConditionSet":
        current = dict(self.flags)
        for name, value in [(n, True) for n in enable] + [(n, False) for n in disable]:
            if name not in current:
                raise ConfigError(f"unknown frame condition '{name}' (known: {', '.join(CONDITION_NAMES)})")
            current[name] = value
        return ConditionSet(tuple((name, current[name]) for name in CONDITION_NAMES))

    def require_load_bearing(self) -> None:
        """Refuse selections that drop a condition the corpus relies on."""
        missing = sorted(name for name in LOAD_BEARING if not self.is_enabled(name))
        if missing:
            raise ConfigError(f"corpus runs cannot disable {', '.join(missing)}")

    def to_dict(self) -> Dict[str, bool]:
        return dict(self.flags)

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "ConditionSet":
        unknown = sorted(set(data) - set(CONDITION_NAMES))
        if unknown:
            raise ConfigError(f"unknown frame condition(s): {', '.join(unknown)}")
        flags = []
        for name in CONDITION_NAMES:
            value = data.get(name, True)
            if not isinstance(value, bool):
                raise ConfigError(f"condition '{name}' must be true or false, got {value!r}")
            flags.append((name, value))
        return cls(tuple(flags))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ConditionSet":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read condition set {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"condition set {path} must hold a JSON object")
        return cls.from_dict(data)


DEFAULT_CONDITIONS = ConditionSet()


def frame_conditions_check(model: Union[Interpretation, Frame], conditions: ConditionSet = DEFAULT_CONDITIONS) -> List[Violation]:
    """List every violated enabled condition together with its witness."""
    frame = model.frame if isinstance(model, Interpretation) else model
    violations = [
        Violation(name, witness)
        for name in conditions.enabled
        for witness in CHECKS[name](frame)
    ]
    if violations:
        _LOGGER.debug("Frame violates %d condition instance(s)", len(violations))
    return violations


def frame_ok(frame: Frame, conditions: ConditionSet = DEFAULT_CONDITIONS) -> bool:
    return not any(next(CHECKS[name](frame), None) is not None for name in conditions.enabled)
