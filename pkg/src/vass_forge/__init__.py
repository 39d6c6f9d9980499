"""Vector addition systems with states: a counter-program compiler, a brute-force
reachability oracle, and the gadgets of the Ackermann lower-bound construction."""

__version__ = "0.1.0"

from .core import Configuration, Run, Transition, Vass, fire, replay, trace
from .oracle import bounded_reach, decide_reach, enumerate_runs, max_reachable
from .program import CounterProgram, compile_program, expand_for, parse

__all__ = [
    "Configuration",
    "CounterProgram",
    "Run",
    "Transition",
    "Vass",
    "__version__",
    "bounded_reach",
    "compile_program",
    "decide_reach",
    "enumerate_runs",
    "expand_for",
    "fire",
    "max_reachable",
    "parse",
    "replay",
    "trace",
]
