import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import naive_reach
from strategies import small_vass
from vass_forge.core import (
    Configuration,
    Run,
    Transition,
    Vass,
    config_from_dict,
    config_to_dict,
    dumps,
    effect_of,
    embed,
    embed_config,
    fire,
    replay,
    run_from_dict,
    run_to_dict,
    sequential_compose,
    trace,
    vass_from_dict,
    vass_to_dict,
)
from vass_forge.errors import (
    BadMap,
    BadTransition,
    DimensionMismatch,
    NegativeCounter,
    SchemaError,
    StateMismatch,
)
from vass_forge.gadgets import make_f1_amplifier
from vass_forge.gadgets.examples import doubling_program
from vass_forge.oracle import bounded_reach
from vass_forge.program import compile_program, expand_for


@pytest.fixture
def example1():
    return compile_program(expand_for(doubling_program(2)))


def test_fire_single_increment():
    v = Vass(("x",), ("p",), [("p", (1,), "p")])
    assert fire(v, Configuration("p", (0,)), 0) == Configuration("p", (1,))


def test_fire_guard_below_zero():
    v = Vass(("x", "y"), ("p", "q"), [("p", (-1, 1), "q")])
    with pytest.raises(NegativeCounter):
        fire(v, Configuration("p", (0, 5)), 0)


def test_fire_state_mismatch_and_bad_index():
    v = Vass(("x",), ("p", "q"), [("p", (1,), "q")])
    with pytest.raises(StateMismatch):
        fire(v, Configuration("q", (0,)), 0)
    with pytest.raises(BadTransition):
        fire(v, Configuration("p", (0,)), 3)


def test_fire_first_edge_of_doubling_vass(example1):
    v = example1.vass
    assert fire(v, example1.start(), 0) == Configuration("q1", (1, 0))


def test_replay_empty_run_returns_start():
    v = Vass(("x",), ("p",))
    c = Configuration("p", (4,))
    assert replay(v, Run(c)) == c


def test_replay_doubling_prefix(example1):
    v = example1.vass
    # enter, move x to y once, leave, move y back doubled
    r = Run(example1.start(), (0, 1, 2, 3))
    assert replay(v, r) == Configuration("q2", (2, 0))
    assert effect_of(v, r) == (2, 0)


def test_replay_reports_offending_step():
    v = Vass(("x",), ("p", "q"), [("p", (1,), "q"), ("p", (1,), "p")])
    with pytest.raises(StateMismatch) as exc:
        replay(v, Run(Configuration("p", (0,)), (0, 0)))
    assert exc.value.step == 1
    w = Vass(("x",), ("p",), [("p", (-1,), "p")])
    with pytest.raises(NegativeCounter) as exc2:
        replay(w, Run(Configuration("p", (2,)), (0, 0, 0)))
    assert exc2.value.step == 2


def test_effect_of_additivity():
    v = Vass(("x", "y"), ("p",), [("p", (1, 0), "p"), ("p", (-1, 1), "p")])
    assert effect_of(v, Run(Configuration("p", (0, 0)), ())) == (0, 0)
    assert effect_of(v, Run(Configuration("p", (0, 0)), (0, 1))) == (0, 1)


def test_configuration_rejects_negative_values():
    with pytest.raises(NegativeCounter):
        Configuration("p", (0, -1))


def test_vass_validation():
    with pytest.raises(BadTransition):
        Vass(("x",), ("p",), [("p", (1,), "q")])
    with pytest.raises(DimensionMismatch):
        Vass(("x",), ("p",), [("p", (1, 2), "p")])
    with pytest.raises(BadTransition):
        Vass(("x", "x"), ("p",))


def test_embed_identity_is_structurally_equal(example1):
    v = example1.vass
    assert embed(v, 2, [0, 1], names=v.counters) == v


def test_embed_single_counter_loop():
    v = Vass(("x",), ("p",), [("p", (1,), "p")])
    w = embed(v, 3, [2])
    assert w.transitions == (Transition("p", (0, 0, 1), "p"),)


def test_embed_f1_amplifier_into_upper_half():
    a = make_f1_amplifier()
    w = embed(a.vass, 12, list(range(6, 12)))
    assert all(eff[:6] == (0,) * 6 for _, eff, _ in w.transitions)
    assert [eff[6:] for _, eff, _ in w.transitions] == [eff for _, eff, _ in a.vass.transitions]


def test_embed_rejects_bad_maps():
    v = Vass(("x", "y"), ("p",))
    with pytest.raises(BadMap):
        embed(v, 3, [0, 0])
    with pytest.raises(BadMap):
        embed(v, 3, [0, 3])
    with pytest.raises(BadMap):
        embed(v, 1, [0])


@given(small_vass(max_dim=2), st.integers(0, 2))
def test_embed_preserves_reachability(v, shift):
    d = v.dimension
    cmap = [i + shift for i in range(d)]
    w = embed(v, d + shift + 1, cmap)
    src = Configuration(v.states[0], (1,) * d)
    narrow = bounded_reach(v, src, 3)
    wide = bounded_reach(w, embed_config(src, w.dimension, cmap), 3)
    projected = {(s, tuple(vals[j] for j in cmap)) for s, vals in wide.items()}
    assert projected == set(narrow.items())
    assert all(vals[j] == 0 for _, vals in wide.items() for j in range(w.dimension) if j not in cmap)


def test_compose_with_empty_vass(example1):
    v = example1.vass
    e = Vass(v.counters, ("e",))
    w = sequential_compose(v, (example1.target, "e"), e, prefixes=("", ""))
    assert w.transitions[:-1] == v.transitions
    assert w.transitions[-1] == Transition(example1.target, (0, 0), "e")


def test_compose_two_doubling_vass(example1):
    v = example1.vass
    w = sequential_compose(v, (example1.target, "q0"), v, prefixes=("a.", "b."))
    assert len(w.states) == 10
    res = bounded_reach(w, Configuration("a.q0", (0, 0)), 32)
    ref, _ = naive_reach(w.transitions, "a.q0", (0, 0), 32)
    assert set(res.items()) == ref
    # first copy peaks at 4, the second adds 1 and doubles twice
    assert max(vals[0] for s, vals in res.items() if s == "b.q4") == 20


def test_compose_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        sequential_compose(Vass(("x", "y"), ("p",)), ("p", "q"), Vass(("x", "y", "z"), ("q",)))


@given(small_vass(), st.lists(st.integers(0, 4), max_size=8), st.integers(0, 3))
def test_replay_equals_start_plus_effect(v, choices, start_val):
    c = Configuration(v.states[0], (start_val,) * v.dimension)
    steps = []
    for ch in choices:
        enabled = [t for t in v.outgoing[c.state]]
        if not enabled:
            break
        t = enabled[ch % len(enabled)]
        try:
            c = fire(v, c, t)
        except NegativeCounter:
            break
        steps.append(t)
        assert min(c.values) >= 0
    r = Run(Configuration(v.states[0], (start_val,) * v.dimension), tuple(steps))
    end = replay(v, r)
    assert end.values == tuple(a + b for a, b in zip(r.start.values, effect_of(v, r)))
    assert len(trace(v, r)) == len(steps) + 1


@given(small_vass())
def test_json_round_trip(v):
    assert vass_from_dict(json.loads(dumps(vass_to_dict(v)))) == v


def test_json_big_integers_become_strings():
    big = 2**60
    v = Vass(("x",), ("p",), [("p", (big,), "p")])
    d = vass_to_dict(v)
    assert d["transitions"][0]["effect"] == [str(big)]
    assert list(d) == ["dimension", "counters", "states", "transitions"]
    assert vass_from_dict(d) == v
    c = Configuration("p", (big,))
    assert config_from_dict(config_to_dict(c)) == c
    r = Run(c, (0, 0))
    assert run_from_dict(run_to_dict(r)) == r


def test_json_schema_errors():
    with pytest.raises(SchemaError):
        vass_from_dict({"counters": ["x"], "states": ["p"]})
    with pytest.raises(SchemaError):
        config_from_dict({"state": "p", "values": [True]})
    with pytest.raises(SchemaError):
        vass_from_dict({"dimension": 3, "counters": ["x"], "states": ["p"], "transitions": []})


@given(small_vass(max_states=2, max_dim=2, max_trans=4))
def test_bounded_reach_matches_naive_fixpoint(v):
    src = Configuration(v.states[0], (1,) * v.dimension)
    res = bounded_reach(v, src, 3)
    ref, clipped = naive_reach(v.transitions, src.state, src.values, 3)
    assert set(res.items()) == ref
    assert res.clipped == clipped
