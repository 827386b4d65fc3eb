"""Regenerate the bundled OEIS b-files used as regression fixtures.

The values come from recurrences that share no code with kbg:

* A018819 / A062051 (partitions of n into powers of 2 / of 3):
  a(n) = a(n-1) + [p | n] a(n/p), a(0) = 1;
* A006519 (highest power of 2 dividing n): n & -n.

Usage: python scripts/make_bfiles.py [--terms 1001]
"""
import argparse
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "kbg" / "data"


def powers_partitions(p, count):
    a = [1]
    for n in range(1, count):
        a.append(a[n - 1] + (a[n // p] if n % p == 0 else 0))
    return a


def write(anum, name, offset, values):
    lines = [f"# {anum} {name}", f"# n a(n), offset {offset}"]
    lines += [f"{offset + i} {v}" for i, v in enumerate(values)]
    (DATA / f"b{anum[1:]}.txt").write_text("\n".join(lines) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--terms", type=int, default=1001)
    args = ap.parse_args()
    write("A018819", "Binary partition function: partitions of n into powers of 2.", 0,
          powers_partitions(2, args.terms))
    write("A062051", "Number of partitions of n into powers of 3.", 0,
          powers_partitions(3, args.terms))
    write("A006519", "Highest power of 2 dividing n.", 1,
          [n & -n for n in range(1, args.terms + 1)])


if __name__ == "__main__":
    main()
