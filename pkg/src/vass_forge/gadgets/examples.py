"""Small worked constructions: the doubling 2-VASS, its controlled 3-VASS, and
the Hopcroft-Pansiot 3-VASS together with its controlled 7-counter version."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import Configuration, Run, Vass, trace
from ..program import (
    CompiledProgram,
    CounterProgram,
    ForN,
    Loop,
    basic,
    compile_program,
    expand_for,
)
from .zero_test import ZeroTestPlan, instrument_constant_controller


def doubling_program(n: int = 2, use_for: bool = True) -> CounterProgram:
    """``x += 1`` then n rounds of (move x to y, move y back doubled)."""
    body = (Loop((basic(x=-1, y=1),)), Loop((basic(x=2, y=-1),)))
    if use_for:
        return CounterProgram(("x", "y"), (basic(x=1), ForN(n, body)))
    return CounterProgram(("x", "y"), (basic(x=1),) + body * n)


def example_exp_schedule(n: int) -> list[dict[str, int]]:
    """Pending zero-test counts per basic block of the expanded doubling program + drain."""
    sched = [{"x": n}]
    for i in range(1, n + 1):
        sched.append({"x": n + 1 - i, "y": n + 1 - i})
        sched.append({"x": n - i, "y": n + 1 - i})
    sched.append({"x": 0})
    return sched


@dataclass(frozen=True)
class ExampleExp:
    n: int
    compiled: CompiledProgram

    @property
    def vass(self) -> Vass:
        return self.compiled.vass

    @property
    def p_states(self) -> tuple[str, ...]:
        return self.compiled.chain[1 : 2 * self.n : 2]

    @property
    def q_states(self) -> tuple[str, ...]:
        return self.compiled.chain[2 : 2 * self.n + 1 : 2]

    @property
    def source(self) -> Configuration:
        return self.compiled.start()

    @property
    def target(self) -> Configuration:
        return self.vass.config(self.compiled.target)

    def plan_for(self, run: Run) -> ZeroTestPlan:
        """Cut at the last visit of p_1, q_1, ..., p_n, q_n; test x at p_i, y at q_i."""
        configs = trace(self.vass, run)
        cuts = [0]
        for state in self.compiled.chain[1 : 2 * self.n + 1]:
            last = max(idx for idx, c in enumerate(configs) if c.state == state)
            cuts.append(last)
        cuts.append(len(run.steps))
        n = self.n
        return ZeroTestPlan(
            tuple(cuts),
            {0: frozenset(range(1, 2 * n, 2)), 1: frozenset(range(2, 2 * n + 1, 2))},
            controlling=2,
        )


def make_example_exp(n: int) -> ExampleExp:
    """Controlled 3-VASS whose only run 0 -> 0 passes q_n(2^n, 0, 0)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = expand_for(doubling_program(n))
    with_drain = CounterProgram(base.counters, base.instructions + (Loop((basic(x=-1),)),))
    prog = instrument_constant_controller(with_drain, example_exp_schedule(n), controller="c")
    return ExampleExp(n, compile_program(prog))


@dataclass(frozen=True)
class ExampleDoubleExp:
    n: int
    instrumented: bool
    compiled: CompiledProgram

    @property
    def vass(self) -> Vass:
        return self.compiled.vass

    def accepting_values(self) -> dict[str, int]:
        """Counter values pinned at the target (all but x)."""
        if not self.instrumented:
            return {"y": 0, "z": 0}
        return {"y": 0, "z": 0, "c": 0, "zp": 0, "zb": self.n, "zbp": self.n}


def _zerotest_bounded(counter_bar: str, n: int):
    # counter + counter_bar = n, so subtracting n from the bar checks counter == 0
    return [basic((counter_bar, -n)), basic((counter_bar, n))]


def make_example_double_exp(n: int, instrumented: bool = True) -> ExampleDoubleExp:
    """Hopcroft-Pansiot (x, y, z), optionally with controller c and the
    n-bounded helpers zp, zb, zbp that implement ``c += z - 2``.

    Counter naming: ``zp`` is z', ``zb`` is z-bar, ``zbp`` is z-bar'.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not instrumented:
        prog = CounterProgram(
            ("x", "y", "z"),
            (
                basic(x=1, z=n),
                Loop(
                    (
                        Loop((basic(x=-1, y=1),)),
                        Loop((basic(x=2, y=-1),)),
                        basic(z=-1),
                    )
                ),
            ),
        )
        return ExampleDoubleExp(n, False, compile_program(prog))

    add_c_z_minus_2 = [
        Loop((basic(c=1, z=-1, zp=1), basic(zb=1, zbp=-1))),
        *_zerotest_bounded("zb", n),
        Loop((basic(z=1, zp=-1), basic(zb=-1, zbp=1))),
        *_zerotest_bounded("zbp", n),
        basic(c=-2),
    ]
    prog = CounterProgram(
        ("x", "y", "z", "c", "zp", "zb", "zbp"),
        (
            basic(x=1, z=n, c=n, zbp=n),
            Loop(
                (
                    Loop((basic(x=-1, y=1),)),
                    Loop((basic(x=2, y=-1), *add_c_z_minus_2)),
                    basic(z=-1, zb=1),
                )
            ),
        ),
    )
    return ExampleDoubleExp(n, True, compile_program(prog))
