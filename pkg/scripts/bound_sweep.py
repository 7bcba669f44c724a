#!/usr/bin/env python3
"""Tabulate covering-number bounds for every class of the classical types.

    python3 scripts/bound_sweep.py --min-rank 9 --max-rank 16 --csv out.csv

Prints, per type and rank, the class count and the extremes of the best
bound; with --csv also writes the full per-class table.
"""

from __future__ import annotations

import argparse
import sys

from unicover.bounds import best_bound, reports_to_csv
from unicover.classes import enumerate_classes


def sweep(types: str, lo: int, hi: int):
    for t in types:
        for r in range(max(lo, {"A": 1, "B": 2, "C": 2, "D": 3}[t]), hi + 1):
            yield t, r, [best_bound(c) for c in enumerate_classes(t, r) if not c.is_identity]


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--types", default="ABCD")
    p.add_argument("--min-rank", type=int, default=2)
    p.add_argument("--max-rank", type=int, default=12)
    p.add_argument("--csv", metavar="PATH", help="write the per-class table here")
    args = p.parse_args(argv)

    everything = []
    print(f"{'type':<6}{'classes':>8}{'min best':>10}{'max best':>10}")
    for t, r, reports in sweep(args.types.upper(), args.min_rank, args.max_rank):
        best = [b.best for b in reports]
        print(f"{t}{r:<5}{len(reports):>8}{min(best):>10}{max(best):>10}")
        everything.extend(reports)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(reports_to_csv(everything))
        print(f"wrote {len(everything)} rows to {args.csv}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
