"""Exhaustive bounded reachability.

This is deliberately plain breadth-first search over explicit configurations:
no acceleration, no abstraction.  It is the ground truth every gadget check
is measured against, so it shares no logic with the gadget builders.

Configurations are stored internally as flat tuples ``(state_idx, *values)``
with parent pointers in two ``array`` columns; exploration order is fixed
(FIFO, transitions in index order), so parents and witnesses are
reproducible.
"""

from __future__ import annotations

import os
import sys
from array import array
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import Configuration, Run, Vass
from .errors import ExplosionGuard

DEFAULT_MAX_STATES = 5_000_000


def default_max_states() -> int:
    return int(os.environ.get("VASS_FORGE_MAX_STATES", DEFAULT_MAX_STATES))


def _caps(v: Vass, cap) -> tuple:
    if isinstance(cap, int):
        caps = (cap,) * v.dimension
    else:
        caps = tuple(int(c) for c in cap)
        if len(caps) != v.dimension:
            raise ValueError(f"cap vector has {len(caps)} entries, VASS has {v.dimension} counters")
    if any(c < 0 for c in caps):
        raise ValueError("caps must be nonnegative")
    # slot 0 of a key is the state index; it is never capped
    return (None,) + caps


def _moves(v: Vass):
    sidx = v.state_index
    moves = [[] for _ in v.states]
    for t, tr in enumerate(v.transitions):
        sparse = tuple((i + 1, e) for i, e in enumerate(tr.effect) if e)
        moves[sidx[tr.source]].append((t, sidx[tr.target], sparse))
    return moves


@dataclass
class ReachResult:
    vass: Vass
    caps: tuple
    keys: list
    index: dict
    parent: array
    via: array
    clipped: bool
    complete: bool

    @property
    def saturated(self) -> bool:
        return self.complete and not self.clipped

    def __len__(self):
        return len(self.keys)

    def _key(self, c: Configuration):
        return (self.vass.state_index[c.state],) + tuple(c.values)

    def __contains__(self, c: Configuration) -> bool:
        return self._key(c) in self.index

    def items(self) -> Iterator[tuple[str, tuple[int, ...]]]:
        """``(state, values)`` pairs in discovery order (cheaper than Configuration)."""
        states = self.vass.states
        for k in self.keys:
            yield states[k[0]], k[1:]

    def configurations(self) -> Iterator[Configuration]:
        for s, vals in self.items():
            yield Configuration(s, vals)

    def values_at(self, state: str) -> set[tuple[int, ...]]:
        i = self.vass.state_index[state]
        return {k[1:] for k in self.keys if k[0] == i}

    def witness(self, c: Configuration) -> Run:
        node = self.index[self._key(c)]
        steps = []
        while self.parent[node] >= 0:
            steps.append(self.via[node])
            node = self.parent[node]
        k = self.keys[0]
        return Run(Configuration(self.vass.states[k[0]], k[1:]), tuple(reversed(steps)))


def _explore(v: Vass, src: Configuration, caps, max_states: int, goal=None) -> ReachResult:
    moves = _moves(v)
    root = (v.state_index[src.state],) + tuple(src.values)
    keys = [root]
    index = {root: 0}
    parent = array("q", [-1])
    via = array("q", [-1])
    clipped = False
    complete = True
    head = 0
    found = goal is not None and root == goal
    while head < len(keys) and not found:
        key = keys[head]
        for t, dst, sparse in moves[key[0]]:
            new = list(key)
            new[0] = dst
            over = False
            for i, e in sparse:
                x = key[i] + e
                if x < 0:
                    break
                if x > caps[i]:
                    over = True
                new[i] = x
            else:
                if over:
                    clipped = True
                    continue
                nk = tuple(new)
                if nk in index:
                    continue
                if len(keys) >= max_states:
                    complete = False
                    break
                index[nk] = len(keys)
                keys.append(nk)
                parent.append(head)
                via.append(t)
                if nk == goal:
                    found = True
                    break
        if not complete:
            break
        head += 1
    return ReachResult(v, caps, keys, index, parent, via, clipped, complete and not found)


def bounded_reach(v: Vass, src: Configuration, cap, max_states: int | None = None) -> ReachResult:
    """BFS closure of ``src`` discarding configurations with an entry above the cap.

    ``cap`` is one bound for every counter or a per-counter sequence.
    ``clipped`` reports that some successor was discarded for exceeding the
    cap; ``complete`` that the closure finished within ``max_states``;
    ``saturated`` that both hold cleanly, i.e. the true reachability set.
    """
    caps = _caps(v, cap)
    if any(x > c for x, c in zip(src.values, caps[1:])):
        raise ValueError("source configuration exceeds the cap")
    return _explore(v, src, caps, max_states or default_max_states())


@dataclass(frozen=True)
class Decision:
    run: Run | None
    clipped: bool
    complete: bool

    @property
    def found(self) -> bool:
        return self.run is not None

    @property
    def saturated(self) -> bool:
        return self.complete and not self.clipped

    @property
    def definitive(self) -> bool:
        """True when the answer is settled for cap-bounded runs."""
        return self.found or self.complete


def _explore_dfs(v: Vass, src: Configuration, caps, max_states: int, goal) -> Decision:
    # same closure as _explore, visited depth-first (lowest transition index first)
    moves = _moves(v)
    root = (v.state_index[src.state],) + tuple(src.values)
    parent = {root: None}
    stack = [root]
    clipped = False
    hit = None
    while stack and hit is None:
        key = stack.pop()
        for t, dst, sparse in reversed(moves[key[0]]):
            new = list(key)
            new[0] = dst
            over = False
            for i, e in sparse:
                x = key[i] + e
                if x < 0:
                    break
                if x > caps[i]:
                    over = True
                new[i] = x
            else:
                if over:
                    clipped = True
                    continue
                nk = tuple(new)
                if nk in parent:
                    continue
                if len(parent) >= max_states:
                    return Decision(None, clipped, False)
                parent[nk] = (key, t)
                stack.append(nk)
                if nk == goal:
                    hit = nk
                    break
    if hit is None:
        return Decision(None, clipped, True)
    steps = []
    node = hit
    while parent[node] is not None:
        node, t = parent[node]
        steps.append(t)
    return Decision(Run(src, tuple(reversed(steps))), clipped, True)


def decide_reach(
    v: Vass,
    src: Configuration,
    trg: Configuration,
    cap,
    max_states: int | None = None,
    order: str = "bfs",
) -> Decision:
    """Search for a cap-bounded run ``src -> trg``.

    ``order="bfs"`` returns a shortest witness; ``order="dfs"`` explores the
    same closure depth-first, which reaches deep targets of long gadget runs
    with far fewer stored configurations.  Either way a miss with
    ``complete`` set is definitive for runs within the cap.
    """
    caps = _caps(v, cap)
    if src == trg:
        return Decision(Run(src, ()), False, True)
    if any(x > c for x, c in zip(trg.values, caps[1:])):
        return Decision(None, False, True)
    goal = (v.state_index[trg.state],) + tuple(trg.values)
    budget = max_states or default_max_states()
    if order == "dfs":
        return _explore_dfs(v, src, caps, budget, goal)
    if order != "bfs":
        raise ValueError(f"unknown search order {order!r}")
    res = _explore(v, src, caps, budget, goal=goal)
    if goal in res.index:
        return Decision(res.witness(trg), res.clipped, True)
    return Decision(None, res.clipped, res.complete)


def _distances_to(v: Vass, trg: Configuration, max_len: int, caps) -> dict:
    """Minimal number of steps from each configuration to ``trg`` (<= max_len)."""
    sidx = v.state_index
    incoming = [[] for _ in v.states]
    for tr in v.transitions:
        incoming[sidx[tr.target]].append((sidx[tr.source], tr.effect))
    goal = (sidx[trg.state],) + tuple(trg.values)
    dist = {goal: 0}
    frontier = deque([goal])
    while frontier:
        key = frontier.popleft()
        d = dist[key]
        if d == max_len:
            continue
        for p, eff in incoming[key[0]]:
            prev = (p,) + tuple(x - e for x, e in zip(key[1:], eff))
            if any(x < 0 for x in prev[1:]):
                continue
            if caps is not None and any(x > c for x, c in zip(prev[1:], caps[1:])):
                continue
            if prev not in dist:
                dist[prev] = d + 1
                frontier.append(prev)
    return dist


def enumerate_runs(
    v: Vass,
    src: Configuration,
    trg: Configuration,
    max_len: int,
    cap=None,
    limit: int = 100_000,
) -> list[Run]:
    """Every distinct run ``src -> trg`` of length <= max_len, length-lexicographic.

    Runs may revisit configurations; distinctness is by transition indices.
    Branches that cannot reach ``trg`` in the remaining budget are pruned
    using exact backward distances, which removes no run.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    caps = _caps(v, cap) if cap is not None else None
    dist = _distances_to(v, trg, max_len, caps)
    moves = _moves(v)
    root = (v.state_index[src.state],) + tuple(src.values)
    goal = (v.state_index[trg.state],) + tuple(trg.values)
    found: list[tuple[int, ...]] = []
    if dist.get(root, max_len + 1) > max_len:
        return []
    path: list[int] = []

    def dfs(key, budget):
        if key == goal:
            found.append(tuple(path))
            if len(found) > limit:
                raise ExplosionGuard(f"more than {limit} runs")
        if budget == 0:
            return
        for t, dst, sparse in moves[key[0]]:
            new = list(key)
            new[0] = dst
            for i, e in sparse:
                x = key[i] + e
                if x < 0:
                    break
                new[i] = x
            else:
                nk = tuple(new)
                if dist.get(nk, max_len + 1) <= budget - 1:
                    path.append(t)
                    dfs(nk, budget - 1)
                    path.pop()

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, max_len + 100))
    try:
        dfs(root, max_len)
    finally:
        sys.setrecursionlimit(old)
    found.sort(key=lambda s: (len(s), s))
    return [Run(src, s) for s in found]


@dataclass(frozen=True)
class MaxResult:
    value: int | None
    clipped: bool
    complete: bool
    witness: Configuration | None = None

    @property
    def saturated(self) -> bool:
        return self.complete and not self.clipped


def max_reachable(
    v: Vass,
    src: Configuration,
    counter: int,
    conditions: dict[int, int] | Sequence[tuple[int, int]] = (),
    cap=None,
    state: str | None = None,
    max_states: int | None = None,
) -> MaxResult:
    """Largest value of ``counter`` over reached configurations meeting the side conditions.

    ``conditions`` pins counters to required values; ``state`` optionally
    restricts to one control state.  ``value`` is None if nothing qualifies.
    When ``clipped`` is set the answer only holds within the cap.
    """
    conds = dict(conditions)
    res = bounded_reach(v, src, cap, max_states=max_states)
    want = None if state is None else v.state_index[state]
    best = None
    best_key = None
    for key in res.keys:
        if want is not None and key[0] != want:
            continue
        if any(key[i + 1] != x for i, x in conds.items()):
            continue
        if best is None or key[counter + 1] > best:
            best = key[counter + 1]
            best_key = key
    wit = None if best_key is None else Configuration(v.states[best_key[0]], best_key[1:])
    return MaxResult(best, res.clipped, res.complete, wit)
