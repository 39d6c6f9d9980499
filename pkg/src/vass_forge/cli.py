"""``vass-forge``: compile counter programs, query the oracle, emit and verify gadgets.

Exit codes: 0 pass/found, 1 usage or input error, 2 definitive negative,
3 inconclusive (cap or state budget reached).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .automaton import BoundedRunQuery, find_bounded_accepting_run, load_automaton
from .core import (
    Configuration,
    Run,
    Vass,
    config_from_dict,
    config_to_dict,
    dumps,
    encode_int,
    replay,
    run_from_dict,
    run_to_dict,
    vass_from_dict,
    vass_to_dict,
)
from .errors import VassForgeError
from .gadgets import (
    ZeroTestPlan,
    big_counter_program,
    check_zero_test_conditions,
    embed_generator,
    fast_growing,
    make_example_double_exp,
    make_example_exp,
    make_fk_amplifier,
    make_generator,
    make_reduction,
    verify_amplifier,
    verify_big_counter,
    verify_example_double_exp,
    verify_example_exp,
    verify_generator,
)
from .oracle import bounded_reach, decide_reach, default_max_states, enumerate_runs
from .program import compile_program, expand_for, format_program, parse

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_INLINE_CONFIG = re.compile(r"^\s*([^\s(]+)\s*\(([^)]*)\)\s*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class VerifySuiteConfig:
    suite: str
    k: int = 1
    m: tuple[int, ...] = (2,)
    n: int = 2
    ymax: int = 3
    cap: int | None = None
    max_states: int | None = None
    fmt: str = "text"

    def __post_init__(self):
        if not self.m:
            raise ValueError("parameter range for M is empty")
        if self.cap is not None and self.cap <= 0:
            raise ValueError("cap must be positive")
        if self.k < 1 or self.n < 1 or self.ymax < 0 or any(x < 1 for x in self.m):
            raise ValueError("k, n and M must be >= 1 and ymax >= 0")
        if self.fmt not in ("text", "json"):
            raise ValueError("format must be text or json")

    def default_cap(self) -> int:
        return 4 * fast_growing(self.k, self.m[0]) * (self.ymax + 1)


# --- loading ---------------------------------------------------------------


def _read_json(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"{path}: no such file")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def load_model(path: str) -> tuple[Vass, dict]:
    """A VASS from a ``.cp`` program or a JSON document (plain or gadget artifact)."""
    if path.endswith(".cp"):
        p = Path(path)
        if not p.is_file():
            raise FileNotFoundError(f"{path}: no such file")
        cp = compile_program(expand_for(parse(p.read_text())))
        return cp.vass, {"source": cp.source, "target": cp.target}
    doc = _read_json(path)
    body = doc.get("vass", doc)
    return vass_from_dict(body), doc


def load_config(text: str, v: Vass, doc: dict, role: str) -> Configuration:
    """``state(1,2,3)``; ``@key`` or ``@key(1,2,3)`` naming an entry of the model
    document (``source``, ``target``, ``src``, ``trg``, ``initial``); or a JSON file."""
    m = _INLINE_CONFIG.match(text)
    if text.startswith("@") and not m:
        ref = doc.get(text[1:])
        if isinstance(ref, dict):
            c = config_from_dict(ref)
        elif isinstance(ref, str):
            c = Configuration(ref, v.zero())
        else:
            raise UsageError(f"model has no {text[1:]!r} entry")
    elif m:
        state, vals = m.group(1), m.group(2)
        if state.startswith("@"):
            key = state[1:]
            if key not in doc:
                raise UsageError(f"model has no {key!r} state")
            state = doc[key]
        values = tuple(int(x) for x in vals.replace(",", " ").split()) if vals.strip() else v.zero()
        c = Configuration(state, values)
    else:
        c = config_from_dict(_read_json(text))
    if c.state not in v.state_index:
        raise UsageError(f"{role} state {c.state!r} is not in the model")
    if len(c.values) != v.dimension:
        raise UsageError(f"{role} has {len(c.values)} values, model has {v.dimension} counters")
    return c


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


# --- subcommands ---------------------------------------------------------------


def cmd_compile(args) -> int:
    src = Path(args.program)
    if not src.is_file():
        raise FileNotFoundError(f"{args.program}: no such file")
    prog = parse(src.read_text())
    if args.expand_for:
        prog = expand_for(prog)
    cp = compile_program(prog)
    doc = {
        "version": __version__,
        "kind": "program",
        "source": cp.source,
        "target": cp.target,
        "vass": vass_to_dict(cp.vass),
    }
    out = Path(args.output) if args.output else src.with_suffix(".vass.json")
    _write(out, dumps(doc))
    print(f"compiled {src} -> {out}: {len(cp.vass.states)} states, {len(cp.vass.transitions)} transitions")
    return EXIT_OK


def _max_states(args) -> int:
    return args.max_states or default_max_states()


def cmd_reach(args) -> int:
    v, doc = load_model(args.model)
    src = load_config(args.src, v, doc, "source")
    if args.trg is None:
        res = bounded_reach(v, src, args.cap, max_states=_max_states(args))
        print(f"reached {len(res)} configurations; saturated={res.saturated} clipped={res.clipped} complete={res.complete}")
        if args.show:
            for c in res.configurations():
                print(f"  {c}")
        return EXIT_OK if res.saturated else EXIT_INCONCLUSIVE
    trg = load_config(args.trg, v, doc, "target")
    dec = decide_reach(v, src, trg, args.cap, max_states=_max_states(args), order=args.order)
    if dec.found:
        assert replay(v, dec.run) == trg
        print(f"found: run of length {len(dec.run.steps)} from {src} to {trg}")
        if args.emit_witness:
            _write(Path(args.emit_witness), dumps(run_to_dict(dec.run)))
        return EXIT_OK
    if dec.saturated:
        print(f"not reachable: {trg} (search saturated within cap {args.cap})")
        return EXIT_NEGATIVE
    print(f"inconclusive: {trg} not found; clipped={dec.clipped} complete={dec.complete}")
    return EXIT_INCONCLUSIVE


def cmd_enumerate(args) -> int:
    v, doc = load_model(args.model)
    src = load_config(args.src, v, doc, "source")
    trg = load_config(args.trg, v, doc, "target")
    runs = enumerate_runs(v, src, trg, args.max_len, cap=args.cap)
    print(f"{len(runs)} run(s) of length <= {args.max_len}")
    for r in runs:
        print("  " + " ".join(map(str, r.steps)))
    return EXIT_OK if runs else EXIT_NEGATIVE


def _gadget_doc(kind: str, params: dict, v: Vass, **extra) -> dict:
    doc = {"version": __version__, "kind": kind, "params": params}
    doc.update(extra)
    doc["vass"] = vass_to_dict(v)
    return doc


def cmd_gadget(args) -> int:
    out_dir = Path(args.out_dir)
    kind = args.kind
    listing = None
    extra_files: dict[str, str] = {}
    if kind in ("f1-amp", "fk-amp"):
        k = 1 if kind == "f1-amp" else args.k
        a = make_fk_amplifier(k)
        stem = "f1-amp" if kind == "f1-amp" else f"f{k}-amp"
        doc = _gadget_doc(
            "amplifier",
            {"k": k},
            a.vass,
            source=a.p_in,
            target=a.p_out,
            input_counters=list(a.input_counters),
            output_counters=list(a.output_counters),
            test_counters=sorted(a.test_counters),
        )
        listing = format_program(a.program)
    elif kind == "generator":
        g = make_generator(make_fk_amplifier(args.k), args.m)
        if args.dim:
            g = embed_generator(g, args.dim)
        stem = f"generator-k{args.k}-m{args.m}"
        doc = _gadget_doc(
            "generator",
            {"k": args.k, "m": args.m, "dim": g.dimension},
            g.vass,
            initial=config_to_dict(g.initial),
            accepting=g.accepting,
            output_counters=list(g.output_counters),
            test_counters=sorted(g.test_counters),
            value=encode_int(g.M),
        )
        listing = format_program(g.program)
    elif kind == "big-counter":
        cp = compile_program(big_counter_program(args.k))
        stem = f"big-counter-k{args.k}"
        doc = _gadget_doc("big-counter", {"k": args.k}, cp.vass, source=cp.source, target=cp.target)
        listing = format_program(cp.program)
    elif kind == "example-exp":
        ex = make_example_exp(args.n)
        stem = f"example-exp-n{args.n}"
        doc = _gadget_doc("example-exp", {"n": args.n}, ex.vass, source=ex.compiled.source, target=ex.compiled.target)
        listing = format_program(ex.compiled.program)
        runs = enumerate_runs(ex.vass, ex.source, ex.target, 20 * 2**args.n, cap=2 ** (args.n + 1))
        if len(runs) == 1:
            plan = ex.plan_for(runs[0])
            extra_files[f"{stem}.run.json"] = dumps(run_to_dict(runs[0]))
            extra_files[f"{stem}.plan.json"] = dumps(plan_to_dict(plan))
    elif kind == "example-7vass":
        ex = make_example_double_exp(args.n, instrumented=not args.uninstrumented)
        stem = f"example-7vass-n{args.n}" + ("-plain" if args.uninstrumented else "")
        doc = _gadget_doc(
            "example-7vass",
            {"n": args.n, "instrumented": not args.uninstrumented},
            ex.vass,
            source=ex.compiled.source,
            target=ex.compiled.target,
        )
        listing = format_program(ex.compiled.program)
    elif kind == "reduce":
        if not args.generator or not args.automaton:
            raise UsageError("reduce needs --generator and --automaton")
        g = _load_generator(args.generator)
        a = load_automaton(args.automaton)
        red = make_reduction(g, a)
        stem = "reduction"
        doc = _gadget_doc(
            "reduction",
            {"generator": Path(args.generator).name, "automaton": Path(args.automaton).name},
            red.vass,
            src=config_to_dict(red.src),
            trg=config_to_dict(red.trg),
        )
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown gadget {kind}")
    written = [out_dir / f"{stem}.json"]
    _write(written[0], dumps(doc))
    if listing is not None:
        written.append(out_dir / f"{stem}.cp")
        _write(written[-1], listing)
    for name, text in extra_files.items():
        written.append(out_dir / name)
        _write(written[-1], text)
    v = vass_from_dict(doc["vass"])
    print(f"{kind}: dimension {v.dimension}, {len(v.states)} states, {len(v.transitions)} transitions")
    for p in written:
        print(f"  wrote {p}")
    return EXIT_OK


def _load_generator(path: str):
    from .gadgets import Generator

    doc = _read_json(path)
    if doc.get("kind") != "generator":
        raise UsageError(f"{path}: not a generator artifact")
    return Generator(
        vass_from_dict(doc["vass"]),
        config_from_dict(doc["initial"]),
        doc["accepting"],
        tuple(doc["output_counters"]),
        frozenset(doc["test_counters"]),
        int(doc["value"]),
    )


def cmd_ca_run(args) -> int:
    a = load_automaton(args.automaton)
    run = find_bounded_accepting_run(a, BoundedRunQuery(args.bound, args.max_len))
    if run is None:
        print(f"no {args.bound}-bounded accepting run")
        return EXIT_NEGATIVE
    print(f"accepting run of length {len(run)}: " + (" ".join(map(str, run)) or "(empty)"))
    return EXIT_OK


def run_verify(cfg: VerifySuiteConfig):
    cap = cfg.cap
    if cfg.suite == "amplifier":
        return verify_amplifier(make_fk_amplifier(cfg.k), cfg.m[0], cfg.ymax, cap or cfg.default_cap(), cfg.max_states)
    if cfg.suite == "generator":
        g = make_generator(make_fk_amplifier(cfg.k), cfg.m[0])
        return verify_generator(g, cfg.ymax, cap or cfg.default_cap(), cfg.max_states)
    if cfg.suite == "example-exp":
        return verify_example_exp(cfg.n)
    if cfg.suite == "example-7vass":
        return verify_example_double_exp(cfg.n, cap, cfg.max_states)
    if cfg.suite == "big-counter":
        return verify_big_counter(cfg.k, cfg.m, cap or 256, cfg.max_states)
    raise UsageError(f"unknown suite {cfg.suite}")


def cmd_verify(args) -> int:
    try:
        cfg = VerifySuiteConfig(
            suite=args.suite,
            k=args.k,
            m=tuple(args.m) if args.m else (2,),
            n=args.n,
            ymax=args.ymax,
            cap=args.cap,
            max_states=args.max_states,
            fmt=args.format,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = run_verify(cfg)
    sys.stdout.write(rep.to_json() if cfg.fmt == "json" else rep.table())
    if args.report:
        _write(Path(args.report), rep.to_json())
    return {"pass": EXIT_OK, "fail": EXIT_NEGATIVE}.get(rep.verdict, EXIT_INCONCLUSIVE)


def plan_to_dict(plan: ZeroTestPlan) -> dict:
    return {
        "cuts": list(plan.cuts),
        "test_sets": {str(i): sorted(s) for i, s in sorted(plan.test_sets.items())},
        "controlling": plan.controlling,
    }


def plan_from_dict(d: dict, v: Vass) -> ZeroTestPlan:
    def idx(key):
        if isinstance(key, int) or (isinstance(key, str) and key.isdigit()):
            return int(key)
        if key in v.counter_index:
            return v.counter_index[key]
        raise UsageError(f"plan names unknown counter {key!r}")

    try:
        return ZeroTestPlan(
            tuple(int(c) for c in d["cuts"]),
            {idx(k): frozenset(int(j) for j in s) for k, s in d["test_sets"].items()},
            idx(d["controlling"]),
        )
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed plan: {exc}") from None


def cmd_check_run(args) -> int:
    v, _ = load_model(args.model)
    run = run_from_dict(_read_json(args.run))
    plan = plan_from_dict(_read_json(args.plan), v)
    rep = check_zero_test_conditions(v, run, plan)
    for row in rep.rows:
        status = "ok" if row.holds else "FAILED"
        print(f"condition ({row.condition}) segment {row.segment:>3}: {status:<6} lhs={row.lhs} rhs={row.rhs}")
    tested = ", ".join(f"{v.counters[i]}@{j}={x}" for (i, j), x in sorted(rep.tested_values.items()))
    print(f"tested values: {tested or 'none'}")
    print(f"final controller = {rep.final_controller}; sum of tested values = {rep.tested_sum}")
    ok = rep.conclusion_verified
    print("conclusion verified" if ok else "conclusion not established")
    return EXIT_OK if ok else EXIT_NEGATIVE


# --- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vass-forge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"vass-forge {__version__}")
    p.add_argument("--seed", type=int, default=None, help="accepted and ignored; all commands are deterministic")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("compile", help="compile a counter program to VASS JSON")
    c.add_argument("program")
    c.add_argument("-o", "--output")
    c.add_argument("--expand-for", action="store_true", help="unroll for-macros before compiling")
    c.set_defaults(func=cmd_compile)

    config_help = "configuration: STATE(v1,v2,...), @source(...)/@target(...), or a JSON file"
    r = sub.add_parser("reach", help="bounded reachability from a configuration")
    r.add_argument("model", help="VASS JSON, gadget artifact, or .cp program")
    r.add_argument("--src", required=True, help=config_help)
    r.add_argument("--trg", help=config_help)
    r.add_argument("--cap", type=int, required=True)
    r.add_argument("--max-states", type=int)
    r.add_argument("--order", choices=("bfs", "dfs"), default="bfs")
    r.add_argument("--emit-witness")
    r.add_argument("--show", action="store_true", help="list every reached configuration")
    r.set_defaults(func=cmd_reach)

    e = sub.add_parser("enumerate", help="all runs between two configurations up to a length")
    e.add_argument("model")
    e.add_argument("--src", required=True, help=config_help)
    e.add_argument("--trg", required=True, help=config_help)
    e.add_argument("--max-len", type=int, required=True)
    e.add_argument("--cap", type=int)
    e.set_defaults(func=cmd_enumerate)

    g = sub.add_parser("gadget", help="emit a construction as JSON plus a .cp listing")
    g.add_argument(
        "kind",
        choices=("f1-amp", "fk-amp", "generator", "big-counter", "example-exp", "example-7vass", "reduce"),
    )
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--dim", type=int, help="pad a generator with untouched counters up to this dimension")
    g.add_argument("--uninstrumented", action="store_true")
    g.add_argument("--generator")
    g.add_argument("--automaton")
    g.add_argument("--out-dir", default=".")
    g.set_defaults(func=cmd_gadget)

    a = sub.add_parser("ca-run", help="bounded accepting run of a three-counter automaton")
    a.add_argument("automaton")
    a.add_argument("--bound", type=int, required=True)
    a.add_argument("--max-len", type=int)
    a.set_defaults(func=cmd_ca_run)

    v = sub.add_parser("verify", help="oracle-check a gadget contract")
    v.add_argument("suite", choices=("amplifier", "generator", "example-exp", "example-7vass", "big-counter"))
    v.add_argument("--k", type=int, default=1)
    v.add_argument("--m", type=int, nargs="+")
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--ymax", type=int, default=3)
    v.add_argument("--cap", type=int)
    v.add_argument("--max-states", type=int)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--report", help="also write the JSON report here")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("check-run", help="check the zero-testing conditions on a run")
    k.add_argument("model")
    k.add_argument("--run", required=True)
    k.add_argument("--plan", required=True)
    k.set_defaults(func=cmd_check_run)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VassForgeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
