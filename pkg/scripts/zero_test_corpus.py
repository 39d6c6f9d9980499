"""Run the zero-test condition checker over random phase-structured runs.

Prints how many runs satisfy each condition and confirms that the controller
always ends at the sum of the tested values when conditions (1) and (2) hold.

    python scripts/zero_test_corpus.py --count 200 --seed 2
"""

import argparse
import pathlib
import sys
from collections import Counter
from dataclasses import dataclass

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

from zt_corpus import corpus  # noqa: E402

from vass_forge.gadgets import check_zero_test_conditions  # noqa: E402


@dataclass(frozen=True)
class CorpusConfig:
    count: int = 200
    seed: int = 2
    max_steps: int = 50


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=2)
    p.add_argument("--max-steps", type=int, default=50)
    a = p.parse_args(argv)
    cfg = CorpusConfig(a.count, a.seed, a.max_steps)
    per_condition = Counter()
    held = identity = 0
    for case in corpus(cfg.count, seed=cfg.seed, max_steps=cfg.max_steps):
        rep = check_zero_test_conditions(case.vass, case.run, case.plan)
        for cond in (1, 2, 3):
            per_condition[cond] += all(r.holds for r in rep.rows if r.condition == cond)
        identity += rep.final_controller == rep.tested_sum
        held += rep.conditions_hold
    print(f"runs {cfg.count}; condition (1) {per_condition[1]}, (2) {per_condition[2]}, (3) {per_condition[3]}")
    print(f"all three {held}; final controller == tested sum in {identity}")
    return 0 if identity == cfg.count else 1


if __name__ == "__main__":
    sys.exit(main())
