"""Many zero-tests through one controlling counter.

A plan fixes cut points ``c_0 = src, ..., c_n = trg`` on a run and, for each
tested counter ``i``, the set ``S_i`` of cut indices where it must be zero.
``pending[j][i]`` counts the tests on ``i`` still ahead at cut ``j``.  If the
controller starts at the pending-weighted sum, every segment changes it by the
pending-weighted sum of its effects, and it ends at zero, then all scheduled
tests hold.  The checker below verifies the hypotheses and, independently,
reads the tested values straight off the run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..core import Run, Vass, trace
from ..errors import BadPlan
from ..program import Basic, CounterProgram, Instruction, Loop, ForN, iter_basics


@dataclass(frozen=True)
class ZeroTestPlan:
    cuts: tuple[int, ...]
    test_sets: Mapping[int, frozenset[int]]
    controlling: int

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(self.cuts))
        object.__setattr__(self, "test_sets", {int(i): frozenset(s) for i, s in dict(self.test_sets).items()})
        n = self.n
        if any(b <= a for a, b in zip(self.cuts, self.cuts[1:])):
            raise BadPlan(f"cuts must be strictly increasing, got {list(self.cuts)}")
        if not self.cuts or self.cuts[0] != 0:
            raise BadPlan("the first cut must be 0 (the source configuration)")
        if self.controlling in self.test_sets:
            raise BadPlan("the controlling counter cannot be tested by itself")
        for i, s in self.test_sets.items():
            if any(not 0 <= j <= n for j in s):
                raise BadPlan(f"test set for counter {i} has indices outside [0, {n}]")

    @property
    def n(self) -> int:
        return len(self.cuts) - 1

    @property
    def pending(self) -> list[dict[int, int]]:
        """``pending[j][i] = |{k >= j : k in S_i}|`` for j in 0..n."""
        out = []
        for j in range(self.n + 1):
            out.append({i: sum(1 for k in s if k >= j) for i, s in self.test_sets.items()})
        return out


@dataclass(frozen=True)
class ConditionRow:
    condition: int
    segment: int
    holds: bool
    lhs: int
    rhs: int


@dataclass(frozen=True)
class ZeroTestReport:
    rows: tuple[ConditionRow, ...]
    tested_values: dict[tuple[int, int], int]
    final_controller: int
    weighted_sum_ok: bool = field(default=False)

    @property
    def conditions_hold(self) -> bool:
        return all(r.holds for r in self.rows)

    @property
    def failures(self) -> list[ConditionRow]:
        return [r for r in self.rows if not r.holds]

    @property
    def direct_zero(self) -> bool:
        """All scheduled tests read zero directly off the run."""
        return all(v == 0 for v in self.tested_values.values())

    @property
    def tested_sum(self) -> int:
        return sum(self.tested_values.values())

    @property
    def conclusion_verified(self) -> bool:
        """When (1)-(3) hold, the direct inspection must agree that every test passed."""
        return self.conditions_hold and self.direct_zero

    @property
    def sound(self) -> bool:
        """Conditions (1)-(3) imply every tested counter reads 0; checked on this run."""
        return (not self.conditions_hold) or self.direct_zero


def check_zero_test_conditions(v: Vass, r: Run, plan: ZeroTestPlan) -> ZeroTestReport:
    configs = trace(v, r)
    if plan.cuts[-1] != len(r.steps):
        raise BadPlan(f"last cut {plan.cuts[-1]} must be the run length {len(r.steps)}")
    ctrl = plan.controlling
    if not 0 <= ctrl < v.dimension or any(not 0 <= i < v.dimension for i in plan.test_sets):
        raise BadPlan("plan refers to counters outside the VASS")
    pending = plan.pending
    cut_cfg = [configs[p] for p in plan.cuts]
    rows = []

    src = cut_cfg[0].values
    rhs = sum(pending[0][i] * src[i] for i in plan.test_sets)
    rows.append(ConditionRow(1, 0, src[ctrl] == rhs, src[ctrl], rhs))

    for j in range(1, plan.n + 1):
        a, b = cut_cfg[j - 1].values, cut_cfg[j].values
        eff = [y - x for x, y in zip(a, b)]
        rhs = sum(pending[j][i] * eff[i] for i in plan.test_sets)
        rows.append(ConditionRow(2, j, eff[ctrl] == rhs, eff[ctrl], rhs))

    final = cut_cfg[-1].values[ctrl]
    rows.append(ConditionRow(3, plan.n, final == 0, final, 0))

    tested = {(i, j): cut_cfg[j].values[i] for i, s in plan.test_sets.items() for j in sorted(s)}
    cond12 = all(row.holds for row in rows if row.condition in (1, 2))
    weighted_ok = (not cond12) or final == sum(tested.values())
    return ZeroTestReport(tuple(rows), tested, final, weighted_ok)


def instrument_constant_controller(
    p: CounterProgram,
    schedule: Mapping[str, int] | Sequence[Mapping[str, int]],
    controller: str = "c",
) -> CounterProgram:
    """Add a controlling counter whose updates are pending-weighted copies.

    ``schedule`` is either one ``{counter: pending}`` map applied to every
    basic block, or one map per basic block in source order.  A block whose
    weighted sum is nonzero gains a single ``controller`` atom carrying it.
    """
    n_basic = sum(1 for _ in iter_basics(p.instructions))
    if isinstance(schedule, Mapping):
        per_block = None
        uniform = dict(schedule)
    else:
        per_block = [dict(s) for s in schedule]
        uniform = {}
        if per_block and len(per_block) != n_basic:
            raise ValueError(f"schedule has {len(per_block)} entries for {n_basic} basic blocks")
        if not per_block:
            per_block = None
    counter = iter(range(n_basic))

    def weight(b: Basic) -> int:
        sched = per_block[next(counter)] if per_block is not None else uniform
        return sum(sched.get(name, 0) * d for name, d in b.atoms if name != controller)

    def walk(instrs) -> tuple[Instruction, ...]:
        out = []
        for ins in instrs:
            if isinstance(ins, Basic):
                w = weight(ins)
                out.append(Basic(ins.atoms + ((controller, w),), line=ins.line) if w else ins)
            elif isinstance(ins, Loop):
                out.append(Loop(walk(ins.body), line=ins.line))
            else:
                out.append(ForN(ins.count, walk(ins.body), line=ins.line))
        return tuple(out)

    counters = p.counters if controller in p.counters else p.counters + (controller,)
    return CounterProgram(counters, walk(p.instructions))
