"""Three-counter automata with zero-tests and their bounded accepting runs.

This side of the reduction check is kept structurally separate from the
VASS oracle: configurations are ``(state, x, y, z)`` tuples explored here
directly, never through a compiled VASS.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .errors import NegativeCounter, SchemaError, ZeroTestFailed

COUNTERS = ("x", "y", "z")


@dataclass(frozen=True)
class Add:
    counter: str
    delta: int


@dataclass(frozen=True)
class ZeroTest:
    counter: str


Op = Union[Add, ZeroTest]


@dataclass(frozen=True)
class CaTransition:
    source: str
    op: Op
    target: str


@dataclass(frozen=True)
class ThreeCounterAutomaton:
    states: tuple[str, ...]
    initial: str
    accepting: str
    transitions: tuple[CaTransition, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        known = set(self.states)
        if len(known) != len(self.states):
            raise SchemaError("duplicate automaton state")
        for s in (self.initial, self.accepting):
            if s not in known:
                raise SchemaError(f"unknown state {s!r}")
        for t in self.transitions:
            if t.source not in known or t.target not in known:
                raise SchemaError(f"transition {t.source!r} -> {t.target!r} uses an unknown state")
            if t.op.counter not in COUNTERS:
                raise SchemaError(f"unknown counter {t.op.counter!r}; use x, y or z")


CaConfig = tuple  # (state, x, y, z)


def ca_step(a: ThreeCounterAutomaton, config: CaConfig, t: CaTransition) -> CaConfig:
    state, *vals = config
    if t.source != state:
        raise ValueError(f"transition leaves {t.source!r} but the automaton is in {state!r}")
    i = COUNTERS.index(t.op.counter)
    if isinstance(t.op, ZeroTest):
        if vals[i] != 0:
            raise ZeroTestFailed(t.op.counter, vals[i])
    else:
        vals[i] += t.op.delta
        if vals[i] < 0:
            raise NegativeCounter(t.op.counter, vals[i])
    return (t.target, *vals)


@dataclass(frozen=True)
class BoundedRunQuery:
    bound: int
    max_len: int | None = None

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")
        if self.max_len is not None and self.max_len < 0:
            raise ValueError("max_len must be nonnegative")


def find_bounded_accepting_run(a: ThreeCounterAutomaton, query: BoundedRunQuery) -> list[int] | None:
    """Shortest accepting run (as transition indices) with every counter <= bound.

    Accepting means from ``initial`` with all counters 0 to ``accepting`` with
    all counters 0.  The bounded space is finite, so ``None`` is definitive.
    """
    start = (a.initial, 0, 0, 0)
    goal = (a.accepting, 0, 0, 0)
    if start == goal:
        return []
    out: dict[str, list[tuple[int, CaTransition]]] = {s: [] for s in a.states}
    for idx, t in enumerate(a.transitions):
        out[t.source].append((idx, t))
    parent = {start: None}
    depth = {start: 0}
    queue = deque([start])
    while queue:
        cfg = queue.popleft()
        if query.max_len is not None and depth[cfg] >= query.max_len:
            continue
        for idx, t in out[cfg[0]]:
            try:
                nxt = ca_step(a, cfg, t)
            except (NegativeCounter, ZeroTestFailed):
                continue
            if max(nxt[1:]) > query.bound or nxt in parent:
                continue
            parent[nxt] = (cfg, idx)
            depth[nxt] = depth[cfg] + 1
            if nxt == goal:
                run = []
                node = nxt
                while parent[node] is not None:
                    node, i = parent[node]
                    run.append(i)
                return run[::-1]
            queue.append(nxt)
    return None


def replay_ca(a: ThreeCounterAutomaton, run: list[int]) -> list[CaConfig]:
    cfg = (a.initial, 0, 0, 0)
    out = [cfg]
    for i in run:
        cfg = ca_step(a, cfg, a.transitions[i])
        out.append(cfg)
    return out


def automaton_to_dict(a: ThreeCounterAutomaton) -> dict:
    def op(o: Op) -> dict:
        if isinstance(o, Add):
            return {"kind": "add", "counter": o.counter, "delta": o.delta}
        return {"kind": "zerotest", "counter": o.counter}

    return {
        "states": list(a.states),
        "initial": a.initial,
        "accepting": a.accepting,
        "transitions": [{"from": t.source, "op": op(t.op), "to": t.target} for t in a.transitions],
    }


def automaton_from_dict(d: dict) -> ThreeCounterAutomaton:
    try:
        trans = []
        for t in d["transitions"]:
            o = t["op"]
            if o["kind"] == "add":
                delta = o["delta"]
                if not isinstance(delta, int) or isinstance(delta, bool):
                    raise SchemaError(f"delta must be an integer, got {delta!r}")
                op: Op = Add(o["counter"], delta)
            elif o["kind"] == "zerotest":
                op = ZeroTest(o["counter"])
            else:
                raise SchemaError(f"unknown op kind {o['kind']!r}")
            trans.append(CaTransition(t["from"], op, t["to"]))
        return ThreeCounterAutomaton(tuple(d["states"]), d["initial"], d["accepting"], tuple(trans))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed automaton: {exc}") from exc


def load_automaton(path: str | Path) -> ThreeCounterAutomaton:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc}") from exc
    return automaton_from_dict(data)


def chain_automaton(ops: list[Op], name: str = "a") -> ThreeCounterAutomaton:
    """A straight-line automaton a0 -op1-> a1 ... -opn-> an, accepting an."""
    states = tuple(f"{name}{i}" for i in range(len(ops) + 1))
    trans = tuple(CaTransition(states[i], op, states[i + 1]) for i, op in enumerate(ops))
    return ThreeCounterAutomaton(states, states[0], states[-1], trans)
