"""Counter programs: a tiny sequential language that compiles to a VASS.

Concrete syntax (one basic block per line)::

    counters x y
    x += 1
    loop { x -= 1  y += 1 }
    for 3 {
      loop { x += 2  y -= 1 }
    }

Compilation follows the usual chain construction: instruction ``i`` sits in
chain state ``q{i}``; a basic block is one transition to ``q{i+1}``; a loop
gets zero-effect edges into and out of its body plus a zero-effect skip edge
to ``q{i+1}``.  A loop whose body is a single basic block becomes a self-loop
on ``q{i}``, and when the last instruction is a loop its chain state is the
target (no trailing ``q{k+1}``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .core import Configuration, Transition, Vass
from .errors import ContainsForMacro, ProgramSyntaxError, UndeclaredCounter


@dataclass(frozen=True)
class Basic:
    atoms: tuple[tuple[str, int], ...]
    line: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple((str(n), int(d)) for n, d in self.atoms))

    def deltas(self) -> dict[str, int]:
        """Net change per counter; repeated counters are summed."""
        out: dict[str, int] = {}
        for name, d in self.atoms:
            out[name] = out.get(name, 0) + d
        return out


@dataclass(frozen=True)
class Loop:
    body: tuple["Instruction", ...]
    line: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))


@dataclass(frozen=True)
class ForN:
    count: int
    body: tuple["Instruction", ...]
    line: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        if self.count < 0:
            raise ValueError("for-macro count must be nonnegative")


Instruction = Union[Basic, Loop, ForN]


@dataclass(frozen=True)
class CounterProgram:
    counters: tuple[str, ...]
    instructions: tuple[Instruction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "counters", tuple(self.counters))
        object.__setattr__(self, "instructions", tuple(self.instructions))
        if len(set(self.counters)) != len(self.counters):
            raise ValueError("duplicate counter in header")
        declared = set(self.counters)
        for b in iter_basics(self.instructions):
            for name, _ in b.atoms:
                if name not in declared:
                    raise UndeclaredCounter(name, b.line)

    def __str__(self):
        return format_program(self)


def basic(*atoms: tuple[str, int], **named: int) -> Basic:
    """``basic(("x", 1), ("y", -1))`` or ``basic(x=1, y=-1)``."""
    return Basic(tuple(atoms) + tuple(named.items()))


def iter_basics(instrs: Sequence[Instruction]) -> Iterator[Basic]:
    """Basic blocks in pre-order (source order)."""
    for ins in instrs:
        if isinstance(ins, Basic):
            yield ins
        else:
            yield from iter_basics(ins.body)


def count_nodes(instrs: Sequence[Instruction]) -> int:
    n = 0
    for ins in instrs:
        n += 1
        if not isinstance(ins, Basic):
            n += count_nodes(ins.body)
    return n


# --- parsing --------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>\#[^\n]*)|(?P<nl>\n)|(?P<op>\+=|-=)"
    r"|(?P<brace>[{}])|(?P<nat>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_.]*)|(?P<bad>.)"
)
_KEYWORDS = {"loop", "for", "counters"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind in ("ws", "comment"):
            continue
        if kind == "bad":
            raise ProgramSyntaxError(f"unexpected character {m.group()!r}", line, col)
        if kind == "ident" and m.group() in _KEYWORDS:
            kind = m.group()
        toks.append(_Tok(kind, m.group(), line, col))
        if kind == "nl":
            line += 1
            line_start = m.end()
    toks.append(_Tok("eof", "", line, len(text) - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.declared: set[str] = set()

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self, kind: str, what: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text if tok.kind != "nl" else "newline")
            raise ProgramSyntaxError(f"expected {what or kind}, found {found}", tok.line, tok.col)
        self.pos += 1
        return tok

    def skip_newlines(self):
        while self.peek().kind == "nl":
            self.pos += 1

    def program(self) -> CounterProgram:
        self.skip_newlines()
        self.take("counters", "'counters' header")
        names = [self.take("ident", "counter name")]
        while self.peek().kind == "ident":
            names.append(self.take("ident"))
        seen = set()
        for tok in names:
            if tok.text in seen:
                raise ProgramSyntaxError(f"counter {tok.text!r} declared twice", tok.line, tok.col)
            seen.add(tok.text)
        self.declared = seen
        instrs = self.block(top=True)
        self.take("eof", "end of input")
        return CounterProgram(tuple(t.text for t in names), tuple(instrs))

    def block(self, top: bool) -> list[Instruction]:
        out: list[Instruction] = []
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.kind == "eof":
                if not top:
                    raise ProgramSyntaxError("unclosed block, expected '}'", tok.line, tok.col)
                return out
            if tok.kind == "brace" and tok.text == "}":
                if top:
                    raise ProgramSyntaxError("unmatched '}'", tok.line, tok.col)
                return out
            if tok.kind == "loop":
                self.pos += 1
                body = self.braced()
                out.append(Loop(tuple(body), line=tok.line))
            elif tok.kind == "for":
                self.pos += 1
                n = int(self.take("nat", "iteration count").text)
                body = self.braced()
                out.append(ForN(n, tuple(body), line=tok.line))
            elif tok.kind == "ident":
                out.append(self.basic())
            else:
                raise ProgramSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.col)

    def braced(self) -> list[Instruction]:
        tok = self.peek()
        if not (tok.kind == "brace" and tok.text == "{"):
            raise ProgramSyntaxError("expected '{'", tok.line, tok.col)
        self.pos += 1
        body = self.block(top=False)
        tok = self.peek()
        if not (tok.kind == "brace" and tok.text == "}"):
            raise ProgramSyntaxError("expected '}'", tok.line, tok.col)
        self.pos += 1
        return body

    def basic(self) -> Basic:
        first = self.peek()
        atoms = []
        while self.peek().kind == "ident" and self.peek().line == first.line:
            name = self.take("ident")
            if name.text not in self.declared:
                raise UndeclaredCounter(name.text, name.line, name.col)
            op = self.take("op", "'+=' or '-='")
            n = int(self.take("nat", "natural number").text)
            atoms.append((name.text, n if op.text == "+=" else -n))
        return Basic(tuple(atoms), line=first.line)


def parse(text: str) -> CounterProgram:
    return _Parser(text).program()


def _format_block(instrs: Sequence[Instruction], indent: int, out: list[str]):
    pad = "  " * indent
    for ins in instrs:
        if isinstance(ins, Basic):
            out.append(pad + "  ".join(f"{n} {'+=' if d >= 0 else '-='} {abs(d)}" for n, d in ins.atoms))
        else:
            head = "loop" if isinstance(ins, Loop) else f"for {ins.count}"
            if not ins.body:
                out.append(f"{pad}{head} {{ }}")
                continue
            out.append(f"{pad}{head} {{")
            _format_block(ins.body, indent + 1, out)
            out.append(pad + "}")


def format_program(p: CounterProgram) -> str:
    out = ["counters " + " ".join(p.counters)]
    _format_block(p.instructions, 0, out)
    return "\n".join(out) + "\n"


# --- for-macro expansion --------------------------------------------------


def _expand(instrs: Sequence[Instruction]) -> list[Instruction]:
    out: list[Instruction] = []
    for ins in instrs:
        if isinstance(ins, Basic):
            out.append(ins)
        elif isinstance(ins, Loop):
            out.append(Loop(tuple(_expand(ins.body)), line=ins.line))
        else:
            body = _expand(ins.body)
            for _ in range(ins.count):
                out.extend(body)
    return out


def expand_for(p: CounterProgram) -> CounterProgram:
    return CounterProgram(p.counters, tuple(_expand(p.instructions)))


def contains_for(instrs: Sequence[Instruction]) -> bool:
    return any(isinstance(i, ForN) or (isinstance(i, Loop) and contains_for(i.body)) for i in instrs)


# --- compilation ----------------------------------------------------------


@dataclass(frozen=True)
class CompiledProgram:
    vass: Vass
    source: str
    target: str
    counter_index: dict[str, int]
    chain: tuple[str, ...]
    program: CounterProgram

    def start(self, values: Sequence[int] | None = None) -> Configuration:
        return self.vass.config(self.source, values)


class VassBuilder:
    """Accumulates states and transitions; used by compile() and gadget builders."""

    def __init__(self, counters: Sequence[str]):
        self.counters = tuple(counters)
        self.index = {c: i for i, c in enumerate(self.counters)}
        self.states: list[str] = []
        self._known: set[str] = set()
        self.transitions: list[Transition] = []

    def state(self, name: str) -> str:
        if name not in self._known:
            self._known.add(name)
            self.states.append(name)
        return name

    def effect(self, deltas: dict[str, int] | None = None) -> tuple[int, ...]:
        eff = [0] * len(self.counters)
        for name, d in (deltas or {}).items():
            eff[self.index[name]] += d
        return tuple(eff)

    def edge(self, src: str, deltas: dict[str, int] | tuple[int, ...] | None, dst: str):
        eff = deltas if isinstance(deltas, tuple) else self.effect(deltas)
        self.transitions.append(Transition(src, eff, dst))

    def add_program(self, instrs: Sequence[Instruction], prefix: str = "") -> tuple[str, str]:
        """Emit a program's chain; returns (source, target) state names."""
        return self._seq(instrs, lambda i: f"{prefix}q{i}")

    def _seq(self, instrs: Sequence[Instruction], name) -> tuple[str, str]:
        k = len(instrs)
        n_chain = k if k and isinstance(instrs[-1], Loop) else k + 1
        chain = [self.state(name(i)) for i in range(n_chain)]
        for i, ins in enumerate(instrs):
            q = chain[i]
            if isinstance(ins, Basic):
                self.edge(q, ins.deltas(), chain[i + 1])
            elif isinstance(ins, Loop):
                body = ins.body
                if len(body) == 1 and isinstance(body[0], Basic):
                    self.edge(q, body[0].deltas(), q)
                elif body:
                    s, t = self._seq(body, lambda j, q=q: f"{q}.{j}")
                    self.edge(q, None, s)
                    self.edge(t, None, q)
                if i + 1 < n_chain:
                    self.edge(q, None, chain[i + 1])
            else:
                raise ContainsForMacro("expand for-macros before compiling")
        return chain[0], chain[-1]

    def build(self) -> Vass:
        return Vass(self.counters, tuple(self.states), tuple(self.transitions))


def compile_program(p: CounterProgram, prefix: str = "") -> CompiledProgram:
    if contains_for(p.instructions):
        raise ContainsForMacro("expand for-macros before compiling")
    b = VassBuilder(p.counters)
    n_chain_before = len(b.states)
    src, trg = b.add_program(p.instructions, prefix)
    k = len(p.instructions)
    n_chain = k if k and isinstance(p.instructions[-1], Loop) else k + 1
    chain = tuple(b.states[n_chain_before : n_chain_before + n_chain])
    return CompiledProgram(b.build(), src, trg, dict(b.index), chain, p)


compile = compile_program  # noqa: A001  (shadows the builtin inside this module only)


@dataclass(frozen=True)
class ProgramReach:
    values: frozenset[tuple[int, ...]]
    clipped: bool
    complete: bool

    @property
    def bound_exceeded(self) -> bool:
        return self.clipped or not self.complete


def program_reach(cp: CompiledProgram, u_in: Sequence[int], bound: int, max_states: int | None = None) -> ProgramReach:
    """All ``u_out`` with ``source(u_in) ->* target(u_out)`` inside the per-counter bound."""
    from .oracle import bounded_reach

    res = bounded_reach(cp.vass, cp.start(u_in), bound, max_states=max_states)
    values = frozenset(c.values for c in res.configurations() if c.state == cp.target)
    return ProgramReach(values, res.clipped, res.complete)
