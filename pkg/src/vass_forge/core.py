"""VASS model: transitions, configurations, runs and their semantics.

All counter values are Python ints, so gadget values such as F_3(4) = 65536
or far larger never overflow.  Every object here is immutable once built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BadMap,
    BadTransition,
    DimensionMismatch,
    NegativeCounter,
    SchemaError,
    StateMismatch,
)

JSON_SAFE_INT = 2**53


class Transition(NamedTuple):
    source: str
    effect: tuple[int, ...]
    target: str


@dataclass(frozen=True)
class Vass:
    counters: tuple[str, ...]
    states: tuple[str, ...]
    transitions: tuple[Transition, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "counters", tuple(self.counters))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(
            self,
            "transitions",
            tuple(Transition(s, tuple(int(e) for e in eff), t) for s, eff, t in self.transitions),
        )
        if not self.counters:
            raise DimensionMismatch("a VASS needs at least one counter")
        if len(set(self.counters)) != len(self.counters):
            raise BadTransition("counter names must be distinct")
        if len(set(self.states)) != len(self.states):
            raise BadTransition("state names must be distinct")
        known = set(self.states)
        d = len(self.counters)
        for i, (s, eff, t) in enumerate(self.transitions):
            if s not in known or t not in known:
                raise BadTransition(f"transition {i} uses unknown state ({s!r} -> {t!r})")
            if len(eff) != d:
                raise DimensionMismatch(f"transition {i} has effect of length {len(eff)}, expected {d}")

    @property
    def dimension(self) -> int:
        return len(self.counters)

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def counter_index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.counters)}

    @cached_property
    def outgoing(self) -> dict[str, tuple[int, ...]]:
        out: dict[str, list[int]] = {s: [] for s in self.states}
        for i, tr in enumerate(self.transitions):
            out[tr.source].append(i)
        return {s: tuple(ts) for s, ts in out.items()}

    def size(self) -> int:
        """Bits needed to write down states and transitions (binary effects)."""
        bits = len(self.states).bit_length() * (len(self.states) + 2 * len(self.transitions))
        for tr in self.transitions:
            bits += sum(abs(e).bit_length() + 1 for e in tr.effect)
        return bits

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dimension

    def config(self, state: str, values: Sequence[int] | None = None) -> "Configuration":
        if values is None:
            values = self.zero()
        if state not in self.state_index:
            raise BadTransition(f"unknown state {state!r}")
        if len(values) != self.dimension:
            raise DimensionMismatch(f"expected {self.dimension} values, got {len(values)}")
        return Configuration(state, tuple(values))


@dataclass(frozen=True, order=True)
class Configuration:
    state: str
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        for i, v in enumerate(self.values):
            if v < 0:
                raise NegativeCounter(i, v)

    def __str__(self):
        return f"{self.state}({', '.join(map(str, self.values))})"


@dataclass(frozen=True)
class Run:
    start: Configuration
    steps: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(int(s) for s in self.steps))

    def __len__(self):
        return len(self.steps)


def _transition(v: Vass, t: int) -> Transition:
    if not 0 <= t < len(v.transitions):
        raise BadTransition(f"transition index {t} out of range (0..{len(v.transitions) - 1})")
    return v.transitions[t]


def fire(v: Vass, c: Configuration, t: int) -> Configuration:
    tr = _transition(v, t)
    if c.state != tr.source:
        raise StateMismatch(tr.source, c.state)
    values = tuple(a + b for a, b in zip(c.values, tr.effect))
    for i, x in enumerate(values):
        if x < 0:
            raise NegativeCounter(i, x)
    return Configuration(tr.target, values)


def trace(v: Vass, r: Run) -> list[Configuration]:
    """All configurations visited by ``r``, starting with ``r.start``."""
    configs = [r.start]
    c = r.start
    for k, t in enumerate(r.steps):
        try:
            c = fire(v, c, t)
        except StateMismatch as e:
            raise StateMismatch(e.expected, e.actual, step=k) from None
        except NegativeCounter as e:
            raise NegativeCounter(e.counter, e.value, step=k) from None
        configs.append(c)
    return configs


def replay(v: Vass, r: Run) -> Configuration:
    return trace(v, r)[-1]


def effect_of(v: Vass, r: Run) -> tuple[int, ...]:
    total = [0] * v.dimension
    for t in r.steps:
        for i, e in enumerate(_transition(v, t).effect):
            total[i] += e
    return tuple(total)


def embed(
    v: Vass,
    target_dim: int,
    counter_map: Sequence[int],
    names: Sequence[str] | None = None,
) -> Vass:
    """Place ``v``'s counter ``i`` at index ``counter_map[i]`` of a wider VASS.

    Indices are 0-based.  Unmapped coordinates get zero effects and, unless
    ``names`` is given, the labels ``pad{j}``.
    """
    if len(counter_map) != v.dimension:
        raise BadMap(f"map has {len(counter_map)} entries for a {v.dimension}-dim VASS")
    if target_dim < v.dimension:
        raise BadMap(f"target dimension {target_dim} smaller than {v.dimension}")
    if len(set(counter_map)) != len(counter_map):
        raise BadMap("counter map is not injective")
    if any(not 0 <= j < target_dim for j in counter_map):
        raise BadMap("counter map points outside the target dimension")
    if names is None:
        labels = [f"pad{j}" for j in range(target_dim)]
        for i, j in enumerate(counter_map):
            labels[j] = v.counters[i]
        if len(set(labels)) != target_dim:
            raise BadMap("embedded counter names collide with padding names; pass names=")
    else:
        labels = list(names)
        if len(labels) != target_dim:
            raise BadMap("names must have target_dim entries")
    transitions = []
    for s, eff, t in v.transitions:
        wide = [0] * target_dim
        for i, j in enumerate(counter_map):
            wide[j] = eff[i]
        transitions.append(Transition(s, tuple(wide), t))
    return Vass(tuple(labels), v.states, tuple(transitions))


def embed_config(c: Configuration, target_dim: int, counter_map: Sequence[int]) -> Configuration:
    wide = [0] * target_dim
    for i, j in enumerate(counter_map):
        wide[j] = c.values[i]
    return Configuration(c.state, tuple(wide))


def sequential_compose(
    v1: Vass,
    glue: tuple[str, str],
    v2: Vass,
    prefixes: tuple[str, str] = ("", ""),
) -> Vass:
    """Disjoint union of ``v1`` and ``v2`` plus a zero edge ``glue[0] -> glue[1]``.

    States keep their names (after prepending the optional prefixes); a clash
    between the two state sets is an error, so callers pick prefixes.
    """
    if v1.dimension != v2.dimension:
        raise DimensionMismatch(f"cannot compose {v1.dimension}-dim and {v2.dimension}-dim VASS")
    p1, p2 = prefixes
    r1 = {s: p1 + s for s in v1.states}
    r2 = {s: p2 + s for s in v2.states}
    if set(r1.values()) & set(r2.values()):
        raise BadMap("state names clash; pass distinct prefixes")
    if glue[0] not in r1 or glue[1] not in r2:
        raise BadTransition(f"glue states {glue!r} not found")
    transitions = [Transition(r1[s], e, r1[t]) for s, e, t in v1.transitions]
    transitions += [Transition(r2[s], e, r2[t]) for s, e, t in v2.transitions]
    transitions.append(Transition(r1[glue[0]], v1.zero(), r2[glue[1]]))
    return Vass(v1.counters, tuple(r1.values()) + tuple(r2.values()), tuple(transitions))


# --- canonical JSON -------------------------------------------------------


def encode_int(x: int):
    return x if -JSON_SAFE_INT < x < JSON_SAFE_INT else str(x)


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise SchemaError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            pass
    raise SchemaError(f"expected an integer, got {x!r}")


def vass_to_dict(v: Vass) -> dict:
    return {
        "dimension": v.dimension,
        "counters": list(v.counters),
        "states": list(v.states),
        "transitions": [
            {"from": s, "effect": [encode_int(e) for e in eff], "to": t} for s, eff, t in v.transitions
        ],
    }


def vass_from_dict(d: dict) -> Vass:
    try:
        counters = d["counters"]
        v = Vass(
            tuple(counters),
            tuple(d["states"]),
            tuple(
                Transition(tr["from"], tuple(decode_int(e) for e in tr["effect"]), tr["to"])
                for tr in d["transitions"]
            ),
        )
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed VASS document: {e}") from None
    if "dimension" in d and d["dimension"] != v.dimension:
        raise SchemaError(f"dimension {d['dimension']} disagrees with {v.dimension} counters")
    return v


def config_to_dict(c: Configuration) -> dict:
    return {"state": c.state, "values": [encode_int(x) for x in c.values]}


def config_from_dict(d: dict) -> Configuration:
    try:
        return Configuration(d["state"], tuple(decode_int(x) for x in d["values"]))
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed configuration: {e}") from None


def run_to_dict(r: Run) -> dict:
    return {"start": config_to_dict(r.start), "steps": list(r.steps)}


def run_from_dict(d: dict) -> Run:
    try:
        return Run(config_from_dict(d["start"]), tuple(int(s) for s in d["steps"]))
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed run: {e}") from None


def dumps(obj) -> str:
    """Deterministic JSON text (insertion-ordered keys, 2-space indent)."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def parse_values(text: str | Iterable[int]) -> tuple[int, ...]:
    if isinstance(text, str):
        return tuple(int(x) for x in text.replace(",", " ").split())
    return tuple(int(x) for x in text)
