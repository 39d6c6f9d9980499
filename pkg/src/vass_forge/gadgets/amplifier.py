"""F_k-amplifiers: 6k-counter programs turning (M, x, Mx) into (F_k(M), y, F_k(M) y).

Level 1 is a direct 6-counter program.  Level k wraps level k-1 in an
n-fold loop driven by the input triple, with one controlling counter ``c``
enforcing that every inner run ends with its tests at zero and that every
copy-back is complete.  Updates of ``c`` by the loop-dependent amount
``(n+1)-i`` are realised as ``c += a * i1`` gadgets built from bounded
transfers between ``i1``, ``y1``, ``y2`` and zero-tests paid for by the
input triple (``i2`` ticks once per ``n`` ticks of ``i3``).

Counter layout for level k >= 2 (0-based indices)::

    0..2  i1 i2 i3      input triple (tested)
    3..5  o1 o2 o3      output triple of the inner amplifier (controlled)
    6..8  s1 s2 s3      input of the inner amplifier; final output
    9     c             controlling counter (tested)
    10,11 y1 y2         helpers for i1
    12..  internal counters of level k-1, suffixed ``_{k-1}``
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import Configuration, Vass
from ..errors import SizeGuard
from ..program import (
    Basic,
    CompiledProgram,
    CounterProgram,
    Instruction,
    Loop,
    basic,
    compile_program,
    count_nodes,
    parse,
)

F1_SOURCE = """\
counters x1 x2 x3 x4 x5 x6
loop {
  x2 -= 2  x5 += 1
  loop { x1 -= 1  x4 += 1  x3 -= 1  x6 += 1 }
  loop { x1 += 1  x4 -= 1  x3 -= 1  x6 += 1 }
}
x2 -= 1
loop { x1 -= 1  x4 += 2  x3 -= 1 }
"""

LAYOUT = ("i1", "i2", "i3", "o1", "o2", "o3", "s1", "s2", "s3", "c", "y1", "y2")
DEFAULT_MAX_NODES = 250_000


@dataclass(frozen=True)
class Amplifier:
    level: int
    program: CounterProgram
    compiled: CompiledProgram
    input_counters: tuple[int, int, int]
    output_counters: tuple[int, int, int]
    test_counters: frozenset[int]

    @property
    def vass(self) -> Vass:
        return self.compiled.vass

    @property
    def p_in(self) -> str:
        return self.compiled.source

    @property
    def p_out(self) -> str:
        return self.compiled.target

    @property
    def dimension(self) -> int:
        return self.vass.dimension

    def input_config(self, m: int, x: int) -> Configuration:
        vals = [0] * self.dimension
        a, b, c = self.input_counters
        vals[a], vals[b], vals[c] = m, x, m * x
        return Configuration(self.p_in, tuple(vals))

    def output_values(self, b: int, y: int) -> tuple[int, ...]:
        vals = [0] * self.dimension
        o1, o2, o3 = self.output_counters
        vals[o1], vals[o2], vals[o3] = b, y, b * y
        return tuple(vals)


def make_f1_amplifier() -> Amplifier:
    prog = parse(F1_SOURCE)
    return Amplifier(1, prog, compile_program(prog), (0, 1, 2), (3, 4, 5), frozenset({0, 1, 2}))


def _zerotest_i1() -> list[Instruction]:
    # transfers y1->i1, y2->y1, y1->y2, i1->y1; total 2n only if i1 started at 0
    return [
        basic(i2=-2),
        Loop((basic(y1=-1, i1=1, i3=-1),)),
        Loop((basic(y2=-1, y1=1, i3=-1),)),
        Loop((basic(y1=-1, y2=1, i3=-1),)),
        Loop((basic(i1=-1, y1=1, i3=-1),)),
    ]


def _zerotest_y1() -> list[Instruction]:
    return [
        basic(i2=-2),
        Loop((basic(i1=-1, y1=1, i3=-1),)),
        Loop((basic(y2=-1, i1=1, i3=-1),)),
        Loop((basic(i1=-1, y2=1, i3=-1),)),
        Loop((basic(y1=-1, i1=1, i3=-1),)),
    ]


def add_c_by_i1(a: int) -> list[Instruction]:
    """``c += a * i1`` (``a`` may be negative), leaving i1, y1, y2 unchanged."""
    return [
        Loop((basic(i1=-1, y1=1, c=a),)),
        *_zerotest_i1(),
        Loop((basic(i1=1, y1=-1),)),
        *_zerotest_y1(),
    ]


def _instrument(instrs, controlled: frozenset[str]) -> tuple[Instruction, ...]:
    out: list[Instruction] = []
    for ins in instrs:
        if isinstance(ins, Basic):
            out.append(ins)
            net = sum(d for name, d in ins.atoms if name in controlled)
            if net:
                out.extend(add_c_by_i1(net))
        else:
            out.append(Loop(_instrument(ins.body, controlled)))
    return tuple(out)


def _rename(instrs, mapping: dict[str, str]) -> tuple[Instruction, ...]:
    out: list[Instruction] = []
    for ins in instrs:
        if isinstance(ins, Basic):
            out.append(Basic(tuple((mapping[n], d) for n, d in ins.atoms)))
        else:
            out.append(Loop(_rename(ins.body, mapping)))
    return tuple(out)


def inner_mapping(inner: Amplifier, k: int) -> dict[str, str]:
    """Where each counter of the level-(k-1) amplifier lives inside level k."""
    names = inner.program.counters
    mapping = {}
    for slot, idx in zip(("s1", "s2", "s3"), inner.input_counters):
        mapping[names[idx]] = slot
    for slot, idx in zip(("o1", "o2", "o3"), inner.output_counters):
        mapping[names[idx]] = slot
    for name in names:
        if name not in mapping:
            mapping[name] = name if "_" in name else f"{name}_{k - 1}"
    return mapping


def make_fk_amplifier(k: int, max_nodes: int = DEFAULT_MAX_NODES) -> Amplifier:
    if k < 1:
        raise ValueError("level must be >= 1")
    if k == 1:
        return make_f1_amplifier()
    inner = make_fk_amplifier(k - 1, max_nodes)
    mapping = inner_mapping(inner, k)
    inner_names = inner.program.counters
    internal = tuple(mapping[n] for n in inner_names if mapping[n] not in LAYOUT)
    counters = LAYOUT + internal

    controlled = frozenset(
        [mapping[inner_names[i]] for i in inner.output_counters]
        + [mapping[inner_names[i]] for i in inner.test_counters]
    )
    body = _instrument(_rename(inner.program.instructions, mapping), controlled)
    copy_back = tuple(Loop((basic((f"o{j}", -1), (f"s{j}", 1), ("c", -1)),)) for j in (1, 2, 3))

    instrs = (
        *_instrument((basic(s1=1), Loop((basic(s2=1, s3=1),))), frozenset({"s1", "s2", "s3"})),
        Loop(body + copy_back + (basic(i1=-1, y2=1),)),
        # y2 ends at n; draining it against one tick of i2 forces exactly n
        basic(i2=-1),
        Loop((basic(y2=-1, i3=-1),)),
    )
    size = count_nodes(instrs)
    if size > max_nodes:
        raise SizeGuard(f"level-{k} amplifier has {size} program nodes (limit {max_nodes})")
    prog = CounterProgram(counters, instrs)
    idx = {name: i for i, name in enumerate(counters)}
    return Amplifier(
        k,
        prog,
        compile_program(prog),
        (idx["i1"], idx["i2"], idx["i3"]),
        (idx["s1"], idx["s2"], idx["s3"]),
        frozenset({idx["i1"], idx["i2"], idx["i3"], idx["c"]}),
    )
