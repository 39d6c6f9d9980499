"""Oracle-backed contract checks for the gadgets.

Every check is a row with a verdict ``pass``, ``fail`` or ``inconclusive``
and a one-line detail.  ``fail`` means the oracle produced a concrete
counterexample; ``inconclusive`` means exploration was cut short by the cap
or the state budget before either a counterexample or a full answer appeared.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from ..core import Configuration, replay, trace
from ..oracle import bounded_reach, decide_reach, default_max_states, enumerate_runs, max_reachable
from .amplifier import Amplifier
from .big_counter import big_counter_start, make_big_counter
from .examples import make_example_double_exp, make_example_exp
from .fast_growing import fast_growing
from .generator import Generator
from .zero_test import check_zero_test_conditions

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class ContractRow:
    name: str
    verdict: str
    detail: str


@dataclass
class ContractReport:
    subject: str
    rows: list[ContractRow] = field(default_factory=list)
    # a partial result that still counts as positive evidence (e.g. a y = 0 witness)
    witness_found: bool = False

    def add(self, name: str, verdict: str, detail: str) -> None:
        self.rows.append(ContractRow(name, verdict, detail))

    @property
    def verdict(self) -> str:
        verdicts = {r.verdict for r in self.rows}
        if FAIL in verdicts:
            return FAIL
        if INCONCLUSIVE in verdicts:
            return "inconclusive-positive" if self.witness_found else INCONCLUSIVE
        return PASS

    def table(self) -> str:
        width = max([len(r.name) for r in self.rows] + [8])
        lines = [self.subject]
        for r in self.rows:
            lines.append(f"  {r.name:<{width}}  {r.verdict:<12}  {r.detail}")
        lines.append(f"  {'verdict':<{width}}  {self.verdict}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "rows": [asdict(r) for r in self.rows],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _fmt_xs(xs) -> str:
    xs = sorted(xs)
    return "none" if not xs else ",".join(map(str, xs))


def verify_amplifier(
    a: Amplifier,
    m: int,
    ymax: int,
    cap: int,
    max_states: int | None = None,
) -> ContractReport:
    """Both directions of the amplifier definition at input ``M = m``.

    Soundness explores every input ``(m, x, m x)`` with ``m x <= cap``;
    completeness looks for each ``y <= ymax`` first in those closures, then
    by depth-first search from the inputs whose closure was cut short.
    """
    budget = max_states or default_max_states()
    f = fast_growing(a.level, m)
    d = a.dimension
    rep = ContractReport(f"amplifier level {a.level}, M={m}, F(M)={f}, ymax={ymax}, cap={cap}")

    ok = d == 6 * a.level
    rep.add("dimension", PASS if ok else FAIL, f"{d} counters (expected {6 * a.level})")

    t = a.test_counters
    ok = set(a.input_counters) <= t and len(t) <= 4 and (a.level == 1 or len(t) == 4)
    rep.add("test-counters", PASS if ok else FAIL, f"{len(t)} tests {sorted(t)}, inputs {list(a.input_counters)}")

    outs = set(a.output_counters)
    bad: list[tuple[int, tuple[int, ...]]] = []
    realized: dict[int, tuple[int, Configuration]] = {}
    partial: list[int] = []
    clipped: list[int] = []
    xs = range(0, cap // m + 1) if m else range(0, 1)
    for x in xs:
        src = a.input_config(m, x)
        res = bounded_reach(a.vass, src, cap, max_states=budget)
        if not res.complete:
            partial.append(x)
        if res.clipped:
            clipped.append(x)
        for vals in sorted(res.values_at(a.p_out)):
            if any(vals[i] for i in t):
                continue
            o1, o2, o3 = (vals[i] for i in a.output_counters)
            clean = all(vals[i] == 0 for i in range(d) if i not in outs)
            if not clean or o1 != f or o3 != f * o2:
                bad.append((x, vals))
            elif o2 not in realized:
                cfg = Configuration(a.p_out, vals)
                run = res.witness(cfg)
                if replay(a.vass, run) == cfg:
                    realized[o2] = (x, cfg)
        del res

    if bad:
        x, vals = bad[0]
        rep.add("soundness", FAIL, f"{len(bad)} bad outputs; first from x={x}: {vals}")
    elif partial or clipped:
        rep.add(
            "soundness",
            INCONCLUSIVE,
            f"no counterexample for x<={xs[-1]}; state budget hit at x={_fmt_xs(partial)}; clipped at x={_fmt_xs(clipped)}",
        )
    else:
        rep.add("soundness", PASS, f"all tests-zero outputs have shape ({f}, y, {f}y) for x<={xs[-1]}")

    missing = []
    for y in range(ymax + 1):
        if y in realized:
            continue
        target = Configuration(a.p_out, a.output_values(f, y))
        for x in partial:
            dec = decide_reach(a.vass, a.input_config(m, x), target, cap, max_states=budget, order="dfs")
            if dec.found and replay(a.vass, dec.run) == target:
                realized[y] = (x, target)
                break
        else:
            missing.append(y)
    found = ", ".join(f"y={y}@x={realized[y][0]}" for y in sorted(realized) if y <= ymax)
    rep.witness_found = 0 in realized
    if not missing:
        rep.add("completeness", PASS, f"realized {found}")
    else:
        rep.add(
            "completeness",
            INCONCLUSIVE,
            f"realized {found or 'nothing'}; y={_fmt_xs(missing)} not reached with inputs m*x<={cap}",
        )
    return rep


def verify_generator(g: Generator, ymax: int, cap: int, max_states: int | None = None) -> ContractReport:
    """Accepting configurations with tests zero carry exactly (M, y, M y)."""
    rep = ContractReport(f"generator M={g.M}, ymax={ymax}, cap={cap}")
    res = bounded_reach(g.vass, g.initial, cap, max_states=max_states)
    outs = set(g.output_counters)
    bad, ys = [], set()
    for vals in sorted(res.values_at(g.accepting)):
        if any(vals[i] for i in g.test_counters):
            continue
        o1, o2, o3 = (vals[i] for i in g.output_counters)
        clean = all(vals[i] == 0 for i in range(g.dimension) if i not in outs)
        if not clean or o1 != g.M or o3 != g.M * o2:
            bad.append(vals)
        else:
            ys.add(o2)
    flags = f"complete={res.complete}, clipped={res.clipped}"
    if bad:
        rep.add("soundness", FAIL, f"{len(bad)} bad outputs; first {bad[0]}")
    elif not res.complete:
        rep.add("soundness", INCONCLUSIVE, f"no counterexample; {flags}")
    else:
        rep.add("soundness", PASS, f"every tests-zero output is ({g.M}, y, {g.M}y) within the cap; {flags}")
    missing = [y for y in range(ymax + 1) if y not in ys]
    rep.witness_found = 0 in ys
    if missing:
        verdict = INCONCLUSIVE if (res.clipped or not res.complete) else FAIL
        rep.add("completeness", verdict, f"y={_fmt_xs(missing)} not reached")
    else:
        rep.add("completeness", PASS, f"y=0..{ymax} reached")
    return rep


def verify_example_exp(n: int, max_len: int | None = None) -> ContractReport:
    ex = make_example_exp(n)
    rep = ContractReport(f"example-exp n={n}")
    cap = 2 ** (n + 1)
    runs = enumerate_runs(ex.vass, ex.source, ex.target, max_len or 20 * 2**n, cap=cap)
    rep.add("unique-run", PASS if len(runs) == 1 else FAIL, f"{len(runs)} run(s) s -> t")
    if len(runs) != 1:
        return rep
    run = runs[0]
    configs = trace(ex.vass, run)
    want = Configuration(ex.q_states[-1], (2**n, 0, 0))
    hit = want in configs
    rep.add("peak", PASS if hit else FAIL, f"visits {want}; run length {len(run.steps)}")
    report = check_zero_test_conditions(ex.vass, run, ex.plan_for(run))
    ok = report.conclusion_verified and report.weighted_sum_ok
    rep.add("zero-tests", PASS if ok else FAIL, f"conditions hold={report.conditions_hold}, tested sum={report.tested_sum}")
    return rep


def verify_example_double_exp(n: int, cap: int | None = None, max_states: int | None = None) -> ContractReport:
    cap = cap if cap is not None else 2**n + 2 * n
    rep = ContractReport(f"example-7vass n={n}, cap={cap}")
    ex = make_example_double_exp(n, instrumented=True)
    v = ex.vass
    src = ex.compiled.start()
    res = bounded_reach(v, src, cap, max_states=max_states)
    pinned = {v.counter_index[k]: val for k, val in ex.accepting_values().items()}
    xs = sorted(
        {vals[0] for vals in res.values_at(ex.compiled.target) if all(vals[i] == x for i, x in pinned.items())}
    )
    ok = bool(xs) and xs == [2**n]
    verdict = PASS if ok and res.complete else (FAIL if xs and xs != [2**n] else INCONCLUSIVE)
    rep.add("forcing", verdict, f"final x values {xs} (want [{2**n}]); complete={res.complete}, clipped={res.clipped}")
    plain = make_example_double_exp(n, instrumented=False)
    pres = bounded_reach(plain.vass, plain.compiled.start(), cap, max_states=max_states)
    pxs = sorted({vals[0] for vals in pres.values_at(plain.compiled.target) if vals[1] == 0 and vals[2] == 0})
    low = any(x < 2**n for x in pxs)
    rep.add("non-forcing", PASS if low else FAIL, f"uninstrumented final x values {pxs}")
    return rep


def verify_big_counter(k: int, ms, cap: int, max_states: int | None = None) -> ContractReport:
    cp = make_big_counter(k)
    rep = ContractReport(f"big-counter k={k}, m={list(ms)}, cap={cap}")
    rest = {i: 0 for i in range(1, k + 1)}
    maxima = []
    for m in ms:
        r = max_reachable(cp.vass, cp.start(big_counter_start(k, m)), 0, rest, cap=cap, state=cp.target, max_states=max_states)
        verdict = PASS if r.saturated and r.value is not None else INCONCLUSIVE
        rep.add(f"m={m}", verdict, f"max x1={r.value}; saturated={r.saturated}")
        maxima.append(r.value)
    if len(maxima) > 1 and None not in maxima:
        ok = all(b == 2 * a for a, b in zip(maxima, maxima[1:]))
        rep.add("doubling", PASS if ok else FAIL, f"maxima {maxima}")
    return rep
