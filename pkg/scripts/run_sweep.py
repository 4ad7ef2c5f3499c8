#!/usr/bin/env python3
"""Sweep a range of odd n and write one JSON plus one text report per n.

Usage:
    python scripts/run_sweep.py --n-range 3..21 --outdir out/
"""

import argparse
import pathlib
import sys

from dlv import canonical_json, render_report_text, report_to_dict, verify


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-range", default="3..21", metavar="A..B")
    parser.add_argument("--outdir", default="out", type=pathlib.Path)
    args = parser.parse_args()

    lo, hi = (int(x) for x in args.n_range.split(".."))
    args.outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for n in range(lo, hi + 1, 2):
        report = verify(n)
        (args.outdir / f"report_n{n}.json").write_text(
            canonical_json(report_to_dict(report))
        )
        (args.outdir / f"report_n{n}.txt").write_text(render_report_text(report))
        failed = sum(1 for r in report.instances if r.status == "Failed")
        worst = max(worst, failed)
        print(f"n={n}: {len(report.instances)} instances, {failed} failed")
    return 2 if worst else 0


if __name__ == "__main__":
    sys.exit(main())
