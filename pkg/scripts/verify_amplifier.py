"""Check the amplifier contract at one level and print the report table.

    python scripts/verify_amplifier.py --k 2 --m 2 --ymax 1 --cap 64

Level 2 at M = 2 takes a few minutes with the default state budget.
"""

import argparse
import sys
from dataclasses import dataclass

from vass_forge.gadgets import make_fk_amplifier, verify_amplifier


@dataclass(frozen=True)
class AmplifierRun:
    k: int = 1
    m: int = 2
    ymax: int = 3
    cap: int | None = None
    max_states: int | None = None

    def resolved_cap(self) -> int:
        # enough room for the largest input the soundness sweep needs to see
        return self.cap if self.cap is not None else 4 * self.m * (2 * self.ymax + 2) ** self.k


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--ymax", type=int, default=3)
    p.add_argument("--cap", type=int)
    p.add_argument("--max-states", type=int)
    p.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    a = p.parse_args(argv)
    cfg = AmplifierRun(a.k, a.m, a.ymax, a.cap, a.max_states)
    rep = verify_amplifier(make_fk_amplifier(cfg.k), cfg.m, cfg.ymax, cfg.resolved_cap(), max_states=cfg.max_states)
    sys.stdout.write(rep.to_json() if a.json else rep.table())
    return 0 if rep.verdict == "pass" else 3 if rep.verdict.startswith("inconclusive") else 2


if __name__ == "__main__":
    sys.exit(main())
