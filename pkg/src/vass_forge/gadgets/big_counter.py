"""The (k+1)-counter family V_k with finite reachability sets but huge values."""

from __future__ import annotations

from ..program import CompiledProgram, CounterProgram, Instruction, Loop, basic, compile_program


def _big_counter_instrs(k: int) -> tuple[Instruction, ...]:
    if k == 2:
        return (
            Loop(
                (
                    Loop((basic(x1=2, x2=-1),)),
                    Loop((basic(x1=-1, x2=1),)),
                    basic(x3=-1),
                )
            ),
        )
    last = basic((f"x{k + 1}", -1), *((f"x{j}", 1) for j in range(3, k)))
    return (
        Loop(
            (
                *_big_counter_instrs(k - 1),
                Loop((basic(("x1", -1), (f"x{k}", 1)),)),
                last,
            )
        ),
    )


def big_counter_program(k: int) -> CounterProgram:
    if k < 2:
        raise ValueError("the family starts at k = 2")
    return CounterProgram(tuple(f"x{j}" for j in range(1, k + 2)), _big_counter_instrs(k))


def make_big_counter(k: int) -> CompiledProgram:
    return compile_program(big_counter_program(k))


def big_counter_start(k: int, m: int) -> tuple[int, ...]:
    """The start valuation (1, 0, 1^{k-2}, m-1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return (1, 0) + (1,) * (k - 2) + (m - 1,)
