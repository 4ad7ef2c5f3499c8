#!/usr/bin/env python3
"""Run every independent check suite and print a one-line summary each.

Usage:
    python scripts/run_oracle_suites.py --trials 10000 --seed 0
"""

import argparse
import sys

from dlv import (
    bilinearity_suite,
    build_tower,
    enumeration_check,
    forcing_order_check,
    identity_suite,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-max", type=int, default=99)
    args = parser.parse_args()

    tower = build_tower(3)
    suites = [
        identity_suite(range(3, args.n_max + 1, 2), m_max_per_n=20, seed=args.seed),
        bilinearity_suite(trials=args.trials, seed=args.seed),
        forcing_order_check(tower.base_blowup, tower.classes["L"], m_cap=5),
        enumeration_check(),
    ]
    total = 0
    for suite in suites:
        state = "ok" if suite.ok else f"{len(suite.failures)} FAILURES"
        print(f"{suite.suite}: {suite.trials} trials, {state}")
        for failure in suite.failures:
            print(f"  {failure}")
        total += len(suite.failures)
    return 2 if total else 0


if __name__ == "__main__":
    sys.exit(main())
