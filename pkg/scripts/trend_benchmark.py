"""Time the exact r~(p, S_n) table up to n = 10^6 and print the growth ratios.

Usage: python scripts/trend_benchmark.py [--primes 2,3] [--max 1000000]
"""
from __future__ import annotations

import argparse
import time

from kbg.analytic import asymptotic_trend, trend_holds


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="2,3")
    ap.add_argument("--max", type=int, default=10**6)
    args = ap.parse_args()

    checkpoints = []
    n = 10
    while n <= args.max:
        checkpoints.append(n)
        n *= 10
    for p in (int(t) for t in args.primes.split(",")):
        t0 = time.perf_counter()
        pts = asymptotic_trend(p, checkpoints)
        dt = time.perf_counter() - t0
        print(f"p={p}  ({dt:.2f}s for the table to n={checkpoints[-1]})")
        for pt in pts:
            print(f"  n={pt.n:>8}  log r~={pt.log_r_tilde:10.4f}  ratio={pt.ratio:.4f}")
        tail = [pt for pt in pts if pt.n >= 10**4]
        print(f"  moving toward 1 from n=10^4 on: {trend_holds(tail) if tail else 'n/a'}")


if __name__ == "__main__":
    main()
