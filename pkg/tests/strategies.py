"""Hypothesis strategies for small programs and VASS."""

from hypothesis import strategies as st

from vass_forge.core import Transition, Vass
from vass_forge.program import Basic, CounterProgram, ForN, Loop

NAMES = ("a", "b", "c")


@st.composite
def basics(draw, names=NAMES, lo=-2, hi=2):
    n = draw(st.integers(1, 3))
    atoms = tuple((draw(st.sampled_from(names)), draw(st.integers(lo, hi))) for _ in range(n))
    return Basic(atoms)


def instructions(names=NAMES, allow_for=True, depth=2):
    leaf = basics(names)
    if depth == 0:
        return leaf
    inner = st.lists(instructions(names, allow_for, depth - 1), min_size=0, max_size=3).map(tuple)
    branches = [leaf, inner.map(Loop)]
    if allow_for:
        branches.append(st.builds(ForN, st.integers(0, 2), inner))
    return st.one_of(*branches)


@st.composite
def programs(draw, allow_for=True, max_len=4, dim=None):
    d = dim or draw(st.integers(1, 3))
    names = NAMES[:d]
    instrs = draw(st.lists(instructions(names, allow_for), min_size=0, max_size=max_len))
    return CounterProgram(names, tuple(instrs))


@st.composite
def small_vass(draw, max_states=3, max_dim=2, max_trans=5, lo=-1, hi=2):
    d = draw(st.integers(1, max_dim))
    states = tuple(f"s{i}" for i in range(draw(st.integers(1, max_states))))
    n = draw(st.integers(0, max_trans))
    trans = tuple(
        Transition(
            draw(st.sampled_from(states)),
            tuple(draw(st.integers(lo, hi)) for _ in range(d)),
            draw(st.sampled_from(states)),
        )
        for _ in range(n)
    )
    return Vass(tuple(f"x{i}" for i in range(d)), states, trans)
