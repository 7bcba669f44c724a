#!/usr/bin/env python3
"""Run every brute-force check from the command line and summarize.

    python3 scripts/check_claims.py            # default ranges
    python3 scripts/check_claims.py --quick    # small ranges, a few seconds
"""

from __future__ import annotations

import argparse
import time

from unicover import cli

QUICK = {
    "a2d-roots": ["--max-d", "6"],
    "w0-negates": ["--max-d", "6"],
    "commutator": ["--max-d", "6"],
    "t-inequality": ["--max-rank", "16"],
    "hat-bound": ["--max-rank", "10"],
    "torus-rank": ["--max-rank", "12"],
    "levi-conjugacy": ["--max-rank", "6"],
    "dimension-chain": ["--max-rank", "10"],
    "family-predicate": ["--max-rank", "8"],
}


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--quick", action="store_true")
    args = p.parse_args(argv)

    worst = 0
    for name in cli.VERIFY_CHECKS:
        start = time.perf_counter()
        code = cli.run(["verify", name, *(QUICK[name] if args.quick else [])])
        print(f"== {name}: exit {code} in {time.perf_counter() - start:.1f}s\n")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
