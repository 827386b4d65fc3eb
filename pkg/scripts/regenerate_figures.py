"""Write the g(p, A, x, 1) grids for p = 2 and p = 3 as CSV files.

Usage: python scripts/regenerate_figures.py [--out figures] [--resolution 401] [--cutoff 20]
"""
from __future__ import annotations

import argparse
import time
from pathlib import Path

from kbg.analytic import figure_grid, g_numeric, write_grid_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--resolution", type=int, default=401)
    ap.add_argument("--cutoff", type=int, default=20)
    ap.add_argument("--primes", default="2,3")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for p in (int(t) for t in args.primes.split(",")):
        t0 = time.perf_counter()
        points = figure_grid(p, args.cutoff, args.resolution)
        path = out / f"g_p{p}_cutoff{args.cutoff}.csv"
        with path.open("w", newline="") as fh:
            n = write_grid_csv(points, fh)
        peak = max(points, key=lambda pt: abs(complex(pt.re_g, pt.im_g)))
        print(
            f"p={p}: {n} points -> {path} ({time.perf_counter() - t0:.1f}s); "
            f"largest |g| = {abs(complex(peak.re_g, peak.im_g)):.3f} at x = {complex(peak.re_x, peak.im_x):.3f}"
        )
    print(f"check: g(2, 0.5) = {g_numeric(2, 0.5, args.cutoff).real:.8f}")


if __name__ == "__main__":
    main()
