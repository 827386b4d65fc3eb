"""Command-line entry point.

Exit codes: 0 success, 1 a requested check failed, 2 bad arguments,
3 invalid group spec, 4 enumeration cap exceeded, 5 no closed form or
group not enumerable.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import analytic
from .families import NoClosedForm, closed_form_profile, order_primes, run_oeis_regression
from .gfcat import Family, run_identity_suite, build_series
from .groups import SpecError, parse_group
from .ktheory import k0_descriptor
from .oracle import CapExceeded, NotEnumerable, oracle_profile, run_oracle_sweep

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_SPEC = 3
EXIT_CAP = 4
EXIT_NO_FORM = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _primes(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of primes, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(float(t)) if "e" in t.lower() else int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _complexes(text: str) -> list[complex]:
    try:
        return [complex(t.replace(" ", "")) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated complex numbers, got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _coeff(c) -> str:
    return str(Fraction(c))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kbg", description="K-theory of classifying spaces of finite groups.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, choices=("text", "json"), default="text"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("rank", help="closed-form ranks and the K^0 descriptor")
    p.add_argument("--group", required=True)
    p.add_argument("--primes", type=_primes)
    fmt(p, ("text", "json", "csv"))

    p = sub.add_parser("series", help="truncated generating function coefficients")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--degree", type=int, default=16)
    p.add_argument("--inner", type=int, default=1, help="r~ of the inner group (WreathTilde)")
    p.add_argument("--nz", type=int, help="second-variable degree (bivariate families)")
    fmt(p, ("text", "json", "csv"))

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=["identities", "oracle", "oeis", "all"], default="all")
    p.add_argument("--p", type=_primes, default=[2, 3, 5])
    p.add_argument("--degree", type=int, default=64)
    p.add_argument("--cap", type=int)
    fmt(p)

    p = sub.add_parser("oracle", help="brute-force ranks by enumeration")
    p.add_argument("--group", required=True)
    p.add_argument("--primes", type=_primes)
    p.add_argument("--cap", type=int)
    fmt(p)

    p = sub.add_parser("figure", help="grid of g(p,A,x,1) over the unit disk")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=20)
    p.add_argument("--resolution", type=int, default=401)
    p.add_argument("--output", help="write here instead of stdout")
    fmt(p, ("csv", "json"), "csv")

    p = sub.add_parser("mellin", help="double sum vs closed form of the Mellin transform")
    p.add_argument("--p", type=_primes, default=[2, 3])
    p.add_argument("--s", type=_complexes, default=[2, 3])
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--tail-tol", type=float, default=1e-7)
    fmt(p)

    p = sub.add_parser("trend", help="growth of r~(p, S_n) against log^2 n / (2 log p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--checkpoints", type=_ints, default=[10**3, 10**4, 10**5, 10**6])
    fmt(p)
    return ap


# ---------------------------------------------------------------------------
# subcommands; each writes to ``out`` and returns an exit code
# ---------------------------------------------------------------------------


def _cmd_rank(args, out) -> int:
    spec = parse_group(args.group)
    primes = args.primes if args.primes is not None else order_primes(spec)
    profile = closed_form_profile(spec, primes)
    desc = k0_descriptor(profile)
    if args.format == "text":
        print(desc.render(), file=out)
        for note in profile.notes:
            print(f"note: {note}", file=sys.stderr)
    elif args.format == "csv":
        print("prime,r,r_tilde", file=out)
        for p in profile.primes:
            print(f"{p},{profile.r(p)},{profile.r_tilde(p)}", file=out)
    else:
        rec = desc.to_record()
        rec["ranks"] = {str(p): str(profile.r(p)) for p in profile.primes}
        rec["k0"] = desc.render()
        rec["notes"] = list(profile.notes)
        print(_dump(rec), file=out)
    return EXIT_OK


def _cmd_series(args, out) -> int:
    s = build_series(args.family, args.p, args.degree, inner_r_tilde=args.inner, Nz=args.nz)
    bivariate = Family(args.family).bivariate
    if args.format == "json":
        rec = {"family": args.family, "p": args.p, "N": args.degree}
        if bivariate:
            rec["rows"] = [[_coeff(c) for c in row] for row in s.rows]
        else:
            rec["coeffs"] = [_coeff(c) for c in s.coeffs]
        print(_dump(rec), file=out)
    elif args.format == "csv":
        if bivariate:
            print("i,j,coeff", file=out)
            for i, row in enumerate(s.rows):
                for j, c in enumerate(row):
                    print(f"{i},{j},{_coeff(c)}", file=out)
        else:
            print("n,coeff", file=out)
            for n, c in enumerate(s.coeffs):
                print(f"{n},{_coeff(c)}", file=out)
    else:
        if bivariate:
            for i, row in enumerate(s.rows):
                print(f"x^{i}: " + " ".join(_coeff(c) for c in row), file=out)
        else:
            print(" ".join(_coeff(c) for c in s.coeffs), file=out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    suites = ["identities", "oeis", "oracle"] if args.suite == "all" else [args.suite]
    records, ok = [], True
    for suite in suites:
        if suite == "identities":
            for p in args.p:
                rep = run_identity_suite(p, args.degree)
                ok &= rep.passed
                records.append(rep.to_record())
                if args.format == "text":
                    print(rep.to_text(), file=out)
        elif suite == "oeis":
            checks = run_oeis_regression(args.degree)
            ok &= all(c.passed for c in checks)
            records.append({"suite": "oeis", "checks": [c.to_record() for c in checks]})
            if args.format == "text":
                print("\n".join(c.describe() for c in checks), file=out)
        else:
            rep = run_oracle_sweep(cap=args.cap)
            ok &= rep.passed
            rec = rep.to_record()
            rec["suite"] = "oracle"
            records.append(rec)
            if args.format == "text":
                print(rep.to_text(), file=out)
    if args.format == "json":
        print(_dump({"passed": ok, "suites": records}), file=out)
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_oracle(args, out) -> int:
    spec = parse_group(args.group)
    primes = args.primes if args.primes is not None else order_primes(spec)
    prof = oracle_profile(spec, primes, cap=args.cap)
    if args.format == "json":
        rec = {"order": prof.order, "classes": prof.total_classes, "r": {str(p): prof.r(p) for p in prof.primes}}
        print(_dump(rec), file=out)
    else:
        ranks = " ".join(f"r({p})={prof.r(p)}" for p in prof.primes)
        print(f"{spec} order={prof.order} classes={prof.total_classes} {ranks}".rstrip(), file=out)
    return EXIT_OK


def _cmd_figure(args, out) -> int:
    points = analytic.figure_grid(args.p, args.cutoff, args.resolution)
    fh = open(args.output, "w", newline="") if args.output else out
    try:
        if args.format == "csv":
            analytic.write_grid_csv(points, fh)
        else:
            rows = [[pt.re_x, pt.im_x, pt.re_g, pt.im_g] for pt in points]
            fh.write(_dump({"p": args.p, "cutoff": args.cutoff, "columns": ["re_x", "im_x", "re_g", "im_g"], "points": rows}))
            fh.write("\n")
    finally:
        if args.output:
            fh.close()
    return EXIT_OK


def _cmd_mellin(args, out) -> int:
    checks = [analytic.mellin_check(p, s, args.tol, args.tail_tol) for p in args.p for s in args.s]
    ok = all(c.passed for c in checks)
    if args.format == "json":
        print(_dump({"passed": ok, "checks": [c.to_record() for c in checks]}), file=out)
    else:
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            print(
                f"[{status}] p={c.p} s={c.s:g} sum={c.lhs:.10g} closed={c.rhs:.10g} "
                f"err={c.abs_err:.2e} tail<={c.tail_bound:.2e}",
                file=out,
            )
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_trend(args, out) -> int:
    points = analytic.asymptotic_trend(args.p, args.checkpoints)
    ok = analytic.trend_holds([pt for pt in points if pt.n >= 10**4] or points)
    if args.format == "json":
        rows = [{"n": pt.n, "log_r_tilde": pt.log_r_tilde, "ratio": pt.ratio} for pt in points]
        print(_dump({"p": args.p, "passed": ok, "points": rows}), file=out)
    else:
        for pt in points:
            print(f"n={pt.n} log r~={pt.log_r_tilde:.6f} ratio={pt.ratio:.6f}", file=out)
        print(f"trend toward 1: {'yes' if ok else 'no'}", file=out)
    return EXIT_OK if ok else EXIT_FAILED


_COMMANDS = {
    "rank": _cmd_rank,
    "series": _cmd_series,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "figure": _cmd_figure,
    "mellin": _cmd_mellin,
    "trend": _cmd_trend,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    """Run one command; output goes to ``out`` (stdout by default)."""
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"kbg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    buf = io.StringIO()
    try:
        code = _COMMANDS[args.command](args, buf)
    except SpecError as exc:
        print(f"kbg: invalid group spec: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except CapExceeded as exc:
        print(f"kbg: enumeration cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NoClosedForm, NotEnumerable) as exc:
        print(f"kbg: {exc}", file=sys.stderr)
        return EXIT_NO_FORM
    except ValueError as exc:
        print(f"kbg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        code = EXIT_OK
    sys.exit(code)
