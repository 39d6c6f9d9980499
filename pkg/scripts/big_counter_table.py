"""Tabulate the largest first counter the big-counter program can leave behind.

    python scripts/big_counter_table.py --k 2 3 --m 2 3 4 --cap 256
"""

import argparse
import sys
import time
from dataclasses import dataclass, field

from vass_forge.gadgets import big_counter_start, make_big_counter
from vass_forge.oracle import max_reachable


@dataclass(frozen=True)
class TableConfig:
    ks: tuple[int, ...] = (2, 3)
    ms: tuple[int, ...] = (2, 3, 4)
    cap: int = 256
    max_states: int | None = None
    # skip (k, m) pairs whose closure is known to exceed any practical budget
    skip: frozenset = field(default_factory=lambda: frozenset({(3, 4)}))


def rows(cfg: TableConfig):
    for k in cfg.ks:
        cp = make_big_counter(k)
        rest = {i: 0 for i in range(1, k + 1)}
        for m in cfg.ms:
            if (k, m) in cfg.skip:
                continue
            t0 = time.perf_counter()
            r = max_reachable(
                cp.vass, cp.start(big_counter_start(k, m)), 0, rest,
                cap=cfg.cap, state=cp.target, max_states=cfg.max_states,
            )
            yield k, m, r.value, r.saturated, time.perf_counter() - t0


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, nargs="+", default=[2, 3])
    p.add_argument("--m", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--cap", type=int, default=256)
    p.add_argument("--max-states", type=int)
    a = p.parse_args(argv)
    cfg = TableConfig(tuple(a.k), tuple(a.m), a.cap, a.max_states)
    print(f"{'k':>2} {'m':>2} {'max x1':>8} {'saturated':>9} {'seconds':>8}")
    for k, m, value, sat, secs in rows(cfg):
        print(f"{k:>2} {m:>2} {value!s:>8} {sat!s:>9} {secs:>8.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
