import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_runs, naive_reach
from strategies import small_vass
from vass_forge.core import Configuration, Run, Transition, Vass, replay, trace
from vass_forge.errors import ExplosionGuard
from vass_forge.gadgets import make_big_counter, make_example_exp
from vass_forge.gadgets.big_counter import big_counter_start
from vass_forge.gadgets.examples import doubling_program
from vass_forge.oracle import bounded_reach, decide_reach, enumerate_runs, max_reachable
from vass_forge.program import compile_program, expand_for

COUNTER_UP = Vass(("x",), ("p",), [("p", (1,), "p")])


def test_increment_loop_is_clipped():
    res = bounded_reach(COUNTER_UP, Configuration("p", (0,)), 3)
    assert sorted(res.values_at("p")) == [(0,), (1,), (2,), (3,)]
    assert res.clipped and res.complete and not res.saturated


def test_no_transitions_saturates():
    v = Vass(("x",), ("p",))
    res = bounded_reach(v, Configuration("p", (2,)), 5)
    assert list(res.configurations()) == [Configuration("p", (2,))]
    assert res.saturated


def test_doubling_vass_reaches_four():
    cp = compile_program(expand_for(doubling_program(2)))
    res = bounded_reach(cp.vass, cp.start(), 8)
    assert (4, 0) in res.values_at("q4")
    c = Configuration("q4", (4, 0))
    assert replay(cp.vass, res.witness(c)) == c


def test_max_states_marks_incomplete():
    res = bounded_reach(COUNTER_UP, Configuration("p", (0,)), 100, max_states=10)
    assert len(res) == 10
    assert not res.complete and not res.saturated


def test_decide_trivial_and_over_cap():
    src = Configuration("p", (0,))
    d = decide_reach(COUNTER_UP, src, src, 3)
    assert d.found and d.run.steps == ()
    d = decide_reach(COUNTER_UP, src, Configuration("p", (9,)), 3)
    assert not d.found and d.definitive


def test_decide_example_exp_n1():
    ex = make_example_exp(1)
    d = decide_reach(ex.vass, ex.source, ex.target, 4)
    assert d.found
    assert Configuration(ex.q_states[0], (2, 0, 0)) in trace(ex.vass, d.run)


def test_decide_rejects_unknown_order():
    src = Configuration("p", (0,))
    with pytest.raises(ValueError):
        decide_reach(COUNTER_UP, src, Configuration("p", (1,)), 3, order="astar")


def test_enumerate_trivial_and_parallel():
    v = Vass(("x",), ("p", "q"), [("p", (1,), "q"), ("p", (1,), "q")])
    src, trg = Configuration("p", (0,)), Configuration("q", (1,))
    assert enumerate_runs(v, src, src, 0) == [Run(src, ())]
    assert [r.steps for r in enumerate_runs(v, src, trg, 3)] == [(0,), (1,)]


def test_enumerate_example_exp_n2_unique():
    ex = make_example_exp(2)
    runs = enumerate_runs(ex.vass, ex.source, ex.target, 30)
    assert len(runs) == 1
    assert replay(ex.vass, runs[0]) == ex.target


def test_enumerate_explosion_guard():
    v = Vass(("x",), ("p",), [("p", (0,), "p"), ("p", (0,), "p")])
    src = Configuration("p", (0,))
    with pytest.raises(ExplosionGuard):
        enumerate_runs(v, src, src, 12, limit=100)


@given(small_vass(max_states=2, max_dim=1, max_trans=3), st.integers(0, 4))
def test_enumerate_matches_brute_force(v, max_len):
    src = Configuration(v.states[0], (1,))
    trg = Configuration(v.states[-1], (1,))
    got = [r.steps for r in enumerate_runs(v, src, trg, max_len)]
    want = brute_runs(v.transitions, src.state, src.values, trg.state, trg.values, max_len)
    assert got == sorted(want, key=lambda s: (len(s), s))


def test_max_reachable_examples():
    r = max_reachable(COUNTER_UP, Configuration("p", (0,)), 0, cap=5)
    assert r.value == 5 and r.clipped
    v = Vass(("x", "y"), ("p",))
    r = max_reachable(v, Configuration("p", (1, 1)), 0, {1: 0}, cap=5)
    assert r.value is None and r.saturated


def test_max_reachable_big_counter_k2_m3():
    cp = make_big_counter(2)
    r = max_reachable(cp.vass, cp.start(big_counter_start(2, 3)), 0, {1: 0, 2: 0}, cap=64, state=cp.target)
    assert r.saturated
    assert r.value == 2


@given(small_vass(), st.integers(0, 3), st.integers(0, 2))
def test_reach_monotone_in_cap(v, cap, extra):
    src = Configuration(v.states[0], (0,) * v.dimension)
    small = set(bounded_reach(v, src, cap).items())
    big = set(bounded_reach(v, src, cap + extra).items())
    assert small <= big


@given(small_vass(max_states=2, max_dim=2, max_trans=4))
def test_witnesses_replay(v):
    src = Configuration(v.states[0], (1,) * v.dimension)
    res = bounded_reach(v, src, 3)
    for c in res.configurations():
        assert replay(v, res.witness(c)) == c


@given(small_vass(max_states=2, max_dim=2, max_trans=4), st.integers(0, 3))
def test_decide_agrees_with_closure(v, which):
    src = Configuration(v.states[0], (1,) * v.dimension)
    res = bounded_reach(v, src, 3)
    ref, _ = naive_reach(v.transitions, src.state, src.values, 3)
    candidates = sorted(ref | {(v.states[-1], (3,) * v.dimension)})
    state, vals = candidates[which % len(candidates)]
    trg = Configuration(state, vals)
    for order in ("bfs", "dfs"):
        d = decide_reach(v, src, trg, 3, order=order)
        assert d.found == (trg in res)
        assert d.complete
        if d.found:
            assert replay(v, d.run) == trg


def test_determinism_of_parents():
    cp = compile_program(expand_for(doubling_program(3)))
    a = bounded_reach(cp.vass, cp.start(), 16)
    b = bounded_reach(cp.vass, cp.start(), 16)
    assert a.keys == b.keys
    assert list(a.parent) == list(b.parent) and list(a.via) == list(b.via)


def test_per_counter_cap_vector():
    v = Vass(("x", "y"), ("p",), [Transition("p", (1, 1), "p")])
    res = bounded_reach(v, Configuration("p", (0, 0)), (5, 2))
    assert max(vals[0] for vals in res.values_at("p")) == 2
