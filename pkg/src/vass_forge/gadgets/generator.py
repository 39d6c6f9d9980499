"""Generators and the reduction from bounded three-counter automata.

A generator pumps ``(x, Mx)`` onto the second and third input counters,
puts ``M`` on the first and hands over to an amplifier, so its accepting
configurations with tests at zero carry ``(f(M), y, f(M) y)`` on the outputs.

The reduction runs a generator of value ``M``, initialises complement
counters to ``M`` and then simulates the automaton, implementing each
zero-test by a round trip of the complement that must burn exactly ``2M``
units of the third output.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..automaton import Add, ThreeCounterAutomaton
from ..core import Configuration, Vass, embed
from ..errors import DimensionTooSmall, TooManyTests
from ..program import CounterProgram, Loop, VassBuilder, basic, compile_program
from .amplifier import Amplifier
from .fast_growing import fast_growing


@dataclass(frozen=True)
class Generator:
    vass: Vass
    initial: Configuration
    accepting: str
    output_counters: tuple[int, int, int]
    test_counters: frozenset[int]
    M: int
    program: CounterProgram | None = None

    @property
    def dimension(self) -> int:
        return self.vass.dimension

    def output_values(self, y: int) -> tuple[int, ...]:
        vals = [0] * self.dimension
        a, b, c = self.output_counters
        vals[a], vals[b], vals[c] = self.M, y, self.M * y
        return tuple(vals)


def make_generator(a: Amplifier, m: int) -> Generator:
    """Generator of value F_k(m): pump ``(x, m x)``, load ``m``, run the amplifier."""
    if m < 1:
        raise ValueError("M must be >= 1")
    names = a.program.counters
    i1, i2, i3 = (names[i] for i in a.input_counters)
    prog = CounterProgram(
        names,
        (Loop((basic((i2, 1), (i3, m)),)), basic((i1, m))) + a.program.instructions,
    )
    cp = compile_program(prog)
    return Generator(
        cp.vass,
        cp.start(),
        cp.target,
        a.output_counters,
        a.test_counters,
        fast_growing(a.level, m),
        prog,
    )


def embed_generator(g: Generator, dim: int) -> Generator:
    """Append ``dim - d`` counters that no transition touches."""
    d = g.dimension
    counter_map = list(range(d))
    v = embed(g.vass, dim, counter_map)
    init = Configuration(g.initial.state, g.initial.values + (0,) * (dim - d))
    prog = None
    if g.program is not None:
        prog = CounterProgram(v.counters, g.program.instructions)
    return Generator(v, init, g.accepting, g.output_counters, g.test_counters, g.M, prog)


@dataclass(frozen=True)
class Reduction:
    vass: Vass
    src: Configuration
    trg: Configuration
    # new position -> original generator counter index
    order: tuple[int, ...]
    # VASS transition index -> automaton transition it completes
    completes: dict[int, int]

    def __iter__(self):
        return iter((self.vass, self.src, self.trg))

    def project(self, steps) -> list[int]:
        """Automaton transition indices simulated by a VASS run."""
        return [self.completes[t] for t in steps if t in self.completes]


def make_reduction(g: Generator, a: ThreeCounterAutomaton) -> Reduction:
    d = g.dimension
    tests = sorted(g.test_counters)
    if d < 12:
        raise DimensionTooSmall(f"need at least 12 counters, generator has {d}")
    if len(tests) > 4:
        raise TooManyTests(f"at most 4 test counters allowed, generator has {len(tests)}")
    outputs = list(g.output_counters)
    rest = [i for i in range(d) if i not in g.test_counters and i not in outputs]
    order = outputs + rest + tests
    names = [f"c{j + 1}" for j in range(d - len(tests))] + [f"t{j + 1}" for j in range(len(tests))]
    pos = {old: new for new, old in enumerate(order)}
    m = g.M

    b = VassBuilder(names)
    for s in g.vass.states:
        b.state(f"gen.{s}")
    for s, eff, t in g.vass.transitions:
        wide = [0] * d
        for i, e in enumerate(eff):
            wide[pos[i]] = e
        b.edge(f"gen.{s}", tuple(wide), f"gen.{t}")

    init_src, init_trg = b.add_program(
        (basic(c2=-1), Loop((basic(c1=-1, c3=-1, c6=1, c7=1, c8=1),))),
        prefix="init.",
    )
    b.edge(f"gen.{g.accepting}", None, init_src)

    sim = {"x": ("c1", "c6"), "y": ("c4", "c7"), "z": ("c5", "c8")}
    for s in a.states:
        b.state(f"A.{s}")
    b.edge(init_trg, None, f"A.{a.initial}")
    completes = {}
    for j, t in enumerate(a.transitions):
        cnt, bar = sim[t.op.counter]
        if isinstance(t.op, Add):
            completes[len(b.transitions)] = j
            b.edge(f"A.{t.source}", {cnt: t.op.delta, bar: -t.op.delta}, f"A.{t.target}")
        else:
            zs, zt = b.add_program(
                (
                    basic(c2=-2),
                    Loop((basic((cnt, 1), (bar, -1), ("c3", -1)),)),
                    Loop((basic((cnt, -1), (bar, 1), ("c3", -1)),)),
                ),
                prefix=f"zt{j}.",
            )
            b.edge(f"A.{t.source}", None, zs)
            completes[len(b.transitions)] = j
            b.edge(zt, None, f"A.{t.target}")

    v = b.build()
    src_vals = [0] * d
    for i, x in enumerate(g.initial.values):
        src_vals[pos[i]] = x
    trg_vals = [0] * d
    for name in ("c6", "c7", "c8"):
        trg_vals[b.index[name]] = m
    src = Configuration(f"gen.{g.initial.state}", tuple(src_vals))
    trg = Configuration(f"A.{a.accepting}", tuple(trg_vals))
    return Reduction(v, src, trg, tuple(order), completes)
