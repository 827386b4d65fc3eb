"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are collected in ``conftest.ACCEPTANCE_LINES`` and shown in the
terminal summary; ``python tests/test_acceptance.py`` prints them directly.
"""
from __future__ import annotations

import csv
import io
import math
import time

import pytest

from kbg.analytic import asymptotic_trend, divergence_probe, mellin_check, gamma, zeta, trend_holds
from kbg.cli import run
from kbg.families import (
    BINDIH_NOTE,
    closed_form_profile,
    exceptional_names,
    exceptional_profile,
    load_bfile,
    r_tilde_cyclic,
    r_tilde_symmetric,
)
from kbg.gfcat import run_identity_suite
from kbg.groups import parse_group
from kbg.ktheory import k0_descriptor
from kbg.oracle import oracle_profile, run_oracle_sweep

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


ORACLE_TABLE = {
    "exc:A4": {2: 1, 3: 2},
    "exc:S4": {2: 3, 3: 1},
    "exc:S5": {2: 3, 3: 1, 5: 1},
    "exc:A5": {2: 1, 3: 1, 5: 2},
    "sl2:3": {2: 2, 3: 2},
    "sl2:5": {2: 2, 3: 1, 5: 2},
    "binO": {2: 5, 3: 1},
    "exc:WD4": {2: 10, 3: 1},
    "exc:WG2": {2: 3, 3: 1},
    "exc:WF4": {2: 13, 3: 3},
    "exc:H3": {2: 3, 3: 1, 5: 2},
}


def test_criterion_01_exceptional_oracle():
    t0 = time.perf_counter()
    bad = []
    for text, ranks in ORACLE_TABLE.items():
        got = oracle_profile(parse_group(text), sorted(ranks)).ranks
        if got != ranks:
            bad.append(f"{text}: {got} != {ranks}")
    dt = time.perf_counter() - t0
    record(1, "exceptional tables reproduced by enumeration", not bad and dt < 60, "; ".join(bad) or f"{len(ORACLE_TABLE)} groups in {dt:.1f}s")


FIXTURE_RENDER = {
    "WE6": "Z x Z_(2)^9 x Z_(3)^4 x Z_(5)^1",
    "WE7": "Z x Z_(2)^23 x Z_(3)^4 x Z_(5)^1 x Z_(7)^1",
    "WE8": "Z x Z_(2)^31 x Z_(3)^6 x Z_(5)^2 x Z_(7)^1",
    "H4": "Z x Z_(2)^6 x Z_(3)^2 x Z_(5)^5",
}


def test_criterion_02_fixture_only_rendering():
    bad = [n for n, want in FIXTURE_RENDER.items() if k0_descriptor(exceptional_profile(n)).render() != want]
    out = io.StringIO()
    code = run(["rank", "--group", "exc:WE8", "--format", "text"], out=out)
    ok = not bad and code == 0 and out.getvalue().strip() == FIXTURE_RENDER["WE8"]
    record(2, "W(E6), W(E7), W(E8), H4 fixture values render exactly", ok, ", ".join(bad))


def test_criterion_03_oeis():
    N = 64
    a018819, a062051, a006519 = load_bfile("A018819"), load_bfile("A062051"), load_bfile("A006519")
    checks = {
        "A018819 = r~(2,S_n)": all(r_tilde_symmetric(2, n) == a018819[n] for n in range(N)),
        "A062051 = r~(3,S_n)": all(r_tilde_symmetric(3, n) == a062051[n] for n in range(N)),
        "A006519(n+1) = r~(2,Z_(n+1))": all(r_tilde_cyclic(2, n) == a006519[n + 1] for n in range(N)),
    }
    bad = [k for k, v in checks.items() if not v]
    record(
        3,
        "OEIS regression n < 64",
        not bad,
        ", ".join(bad) or "A062051 indexes r~(3,S_n) = r(3,S_n) + 1; see the literal-reading xfail below",
    )


@pytest.mark.xfail(strict=True, reason="A062051 counts partitions into powers of 3, which is r~(3,S_n), not r(3,S_n)")
def test_criterion_03_literal_r_reading():
    a062051 = load_bfile("A062051")
    assert all(r_tilde_symmetric(3, n) - 1 == a062051[n] for n in range(64))


def test_criterion_04_identity_suite():
    t0 = time.perf_counter()
    reports = [run_identity_suite(p, 64) for p in (2, 3, 5)]
    dt = time.perf_counter() - t0
    counts = [f"p={r.p}: {sum(c.passed for c in r.checks)}/9" for r in reports]
    ok = all(r.passed and len(r.checks) == 9 for r in reports) and dt < 10
    record(4, "identity suite at N=64", ok, ", ".join(counts) + f", {dt:.1f}s")


def test_criterion_05_oracle_sweep():
    t0 = time.perf_counter()
    report = run_oracle_sweep()
    dt = time.perf_counter() - t0
    failures = [e.group for e in report.entries if not e.agree]
    families = {e.group.split(":")[0].split("(")[0] for e in report.entries}
    ok = report.passed and BINDIH_NOTE in report.notes and dt < 120
    ok = ok and {"cyc", "bincyc", "dic", "sym", "weylB", "weylD", "prod", "wreath"} <= families
    # the CLI surface emits the discrepancy note too
    out = io.StringIO()
    ok = ok and run(["verify", "--suite", "oracle"], out=out) == 0 and BINDIH_NOTE in out.getvalue()
    detail = ", ".join(failures) or f"{len(report.entries)} instances agree in {dt:.1f}s"
    record(5, "closed form vs enumeration sweep", ok, detail)


def test_criterion_06_mellin():
    checks = [mellin_check(p, s) for p in (2, 3) for s in (2, 3)]
    worst = max(c.abs_err for c in checks)
    ok = all(c.abs_err <= 1e-6 and c.tail_bound <= 1e-7 for c in checks)
    ok = ok and abs(gamma(5) - 24) <= 1e-9 and abs(zeta(2) - math.pi**2 / 6) <= 1e-9
    record(6, "Mellin closed form, Gamma/zeta accuracy", ok, f"max error {worst:.1e}")


def test_criterion_07_divergence():
    bad = []
    for p, l in [(2, 3), (2, 5), (3, 2), (3, 4)]:
        mags = divergence_probe(p, l, (0.9, 0.99, 0.999), cutoff=20)
        if not all(b > a for a, b in zip(mags, mags[1:])):
            bad.append(f"(p={p}, l={l}): {mags}")
    record(7, "divergence toward roots of unity", not bad, "; ".join(bad))


def test_criterion_08_asymptotics():
    t0 = time.perf_counter()
    pts = asymptotic_trend(2, [10**4, 10**6])
    dt = time.perf_counter() - t0
    lo, hi = pts
    ok = dt < 10 and 0.5 <= hi.ratio <= 1.5 and abs(1 - hi.ratio) < abs(1 - lo.ratio) and trend_holds(pts)
    record(8, "r~(2,S_n) to 10^6 and growth trend", ok, f"ratios {lo.ratio:.4f} -> {hi.ratio:.4f}, {dt:.1f}s")


def _grid_size(resolution: int) -> int:
    axis = [-1 + 2 * i / (resolution - 1) for i in range(resolution)]
    return sum(1 for y in axis for x in axis if x * x + y * y < 1)


def test_criterion_09_figures():
    reference = -sum(math.log1p(-(0.5 ** (2**j))) for j in range(10))
    notes, ok = [], True
    for p in (2, 3):
        out = io.StringIO()
        code = run(["figure", "--p", str(p), "--cutoff", "20"], out=out)
        rows = list(csv.reader(io.StringIO(out.getvalue())))
        ok &= code == 0 and rows[0] == ["re_x", "im_x", "re_g", "im_g"]
        ok &= len(rows) - 1 == _grid_size(401)
        if p == 2:
            spot = next(r for r in rows[1:] if float(r[0]) == 0.5 and float(r[1]) == 0.0)
            err = abs(complex(float(spot[2]), float(spot[3])) - reference)
            ok &= err <= 1e-6
            notes.append(f"spot error {err:.1e}")
        notes.append(f"p={p}: {len(rows) - 1} points")
    record(9, "figure grids for p=2 and p=3", ok, ", ".join(notes))


def test_criterion_10_k1_vanishes():
    specs = ["cyc:1", "dic:2", "sym:7", "weylD:5", "wreath(sl2:3,4)", "prod(cyc:3,cyc:9)"]
    profiles = [exceptional_profile(n) for n in exceptional_names()]
    profiles += [closed_form_profile(parse_group(s)) for s in specs]
    ok = all(k0_descriptor(p).render_k1() == "0" and k0_descriptor(p).to_record()["k1"] == "0" for p in profiles)
    record(10, "K^1(BG) = 0 for every descriptor", ok, f"{len(profiles)} groups")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
