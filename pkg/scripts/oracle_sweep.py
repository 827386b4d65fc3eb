"""Cross-check every closed form against brute-force enumeration and time it.

Usage: python scripts/oracle_sweep.py [--slowest 10]
"""
from __future__ import annotations

import argparse
import time

from kbg.oracle import run_oracle_sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--slowest", type=int, default=10)
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = run_oracle_sweep()
    print(report.to_text())
    print(f"total {time.perf_counter() - t0:.1f}s; slowest instances:")
    for e in sorted(report.entries, key=lambda e: -e.seconds)[: args.slowest]:
        print(f"  {e.seconds:6.2f}s  {e.group} (order {e.order})")
    raise SystemExit(0 if report.passed else 1)


if __name__ == "__main__":
    main()
