"""Command-line front end: ``pwlmelnikov <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

import numpy as np

from .errors import PwlMelnikovError


def _grid(text: str, geometric: bool = False):
    """``a:b:N`` as an array of ``N`` points."""
    a, b, n = text.split(":")
    fn = np.geomspace if geometric else np.linspace
    return fn(float(a), float(b), int(n))


def _pair(text: str) -> tuple[float, float]:
    a, b = text.split(":")
    return float(a), float(b)


def _writer(path):
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    return fh, csv.writer(fh)


def _emit(text: str, path):
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load_system(path):
    from .model import PwlSystem

    return PwlSystem.load(path)


# commands -------------------------------------------------------------------


def cmd_melnikov(args):
    from .melnikov import melnikov_numeric
    from .model import x_of_r

    sys_ = _load_system(args.system)
    rs = _grid(args.grid)
    delta = melnikov_numeric(sys_, args.order, rs, tol=args.tol)
    fh, w = _writer(args.out)
    w.writerow(["r", "x", f"delta{args.order}"])
    for r, x, d in zip(rs, x_of_r(sys_.curve, rs), delta):
        w.writerow([f"{r:.12g}", f"{x:.12g}", f"{d:.15g}"])
    return 0


def cmd_wronskian_check(args):
    from .chebyshev.families import family
    from .chebyshev.wronskian import closed_wronskian, tabulated, wronskian_sequence

    fam = family(args.family, Fraction(args.k).limit_denominator(10**6) if args.k else None)
    xs = _grid(args.grid, geometric=True)
    numeric = wronskian_sequence(fam, xs, digits=args.digits)
    have_closed = tabulated(fam)
    fh, w = _writer(args.out)
    w.writerow(["x", "j", "numeric", "closed", "rel_err"])
    worst = 0.0
    for j in range(fam.size):
        closed = closed_wronskian(fam, j)(fam.k, xs, digits=args.digits) if have_closed else None
        for i, x in enumerate(xs):
            if closed is None:
                w.writerow([f"{x:.12g}", j, f"{numeric[j, i]:.15g}", "", ""])
                continue
            rel = abs(closed[i] - numeric[j, i]) / abs(closed[i])
            worst = max(worst, rel)
            w.writerow([f"{x:.12g}", j, f"{numeric[j, i]:.15g}", f"{closed[i]:.15g}", f"{rel:.3e}"])
    if fh is not sys.stdout:
        fh.close()
    msg = f"{fam.label()}: max rel err {worst:.2e}" if have_closed else f"{fam.label()}: no closed forms tabulated"
    print(msg, file=sys.stderr)
    return 0 if worst <= args.rtol else 1


def cmd_roots(args):
    from .chebyshev.polynomials import NAMED
    from .chebyshev.sturm import count_real_roots

    lo, hi = (Fraction(v).limit_denominator(10**9) for v in args.interval.split(":"))
    iso = count_real_roots(NAMED[args.which], (lo, hi), width=Fraction(args.width))
    print(f"{args.which} has {iso.count} distinct root(s) in ({lo}, {hi})")
    for (a, b), mult in zip(iso.intervals, iso.multiplicities):
        print(f"  [{float(a):.15f}, {float(b):.15f}]  width {float(b - a):.1e}  multiplicity {mult}")
    return 0


def cmd_cycles(args):
    from .chebyshev.realize import sign_change_zeros
    from .melnikov import melnikov_numeric
    from .poincare import find_limit_cycles

    sys_ = _load_system(args.system)
    window = _pair(args.window)
    zeros = sign_change_zeros(lambda r: melnikov_numeric(sys_, 1, r), window, 400)
    cycles = find_limit_cycles(sys_.with_epsilon(args.epsilon), window, samples=args.samples,
                               melnikov_zeros=zeros)
    report = {
        "m": sys_.curve.m, "n": sys_.curve.n, "epsilon": args.epsilon, "window": list(window),
        "melnikov_zeros": [float(z) for z in zeros],
        "cycles": [vars(c) for c in cycles],
    }
    _emit(json.dumps(report, indent=2), args.out)
    return 0


def cmd_displacement(args):
    from .poincare import displacement

    sys_ = _load_system(args.system)
    if args.epsilon is not None:
        sys_ = sys_.with_epsilon(args.epsilon)
    rs = _grid(args.grid)
    fh, w = _writer(args.out)
    w.writerow(["r", "d"])
    for r, d in zip(rs, displacement(sys_, rs)):
        w.writerow([f"{r:.12g}", f"{d:.15g}"])
    return 0


def cmd_classify(args):
    from .classify import classify, fmt_count

    res = classify(args.m, args.n)
    if args.json:
        print(json.dumps(res.to_dict(), indent=2))
        return 0
    print(f"(m, n) = ({res.m}, {res.n})  {res.parity.value}, k = {res.k}  (table {res.table})")
    print(f"region: {res.region}")
    print(f"m1 = {fmt_count(res.m1)}, m2 = {fmt_count(res.m2)}, m3 = {fmt_count(res.m3)}")
    print(f"H(m, n) >= {res.H_lower}")
    for note in res.notes:
        print(f"note: {note}")
    return 0


def cmd_reproduce_tables(args):
    from .classify import reproduce_tables

    rep = reproduce_tables(args.max)
    print(rep.to_text())
    if args.out:
        for p in rep.write(args.out):
            print(f"wrote {p}", file=sys.stderr)
    return 0 if rep.all_match else 1


def cmd_verify(args):
    from .verify import CHECKS, run_all

    names = list(CHECKS) if args.all or not args.check else args.check

    def show(res):
        print(res.line(), flush=True)
        for d in res.details:
            print(f"    {d}", flush=True)

    results = run_all(names, progress=show)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pwlmelnikov", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("melnikov", help="tabulate a Melnikov function of a system")
    s.add_argument("--system", required=True, help="system JSON file")
    s.add_argument("--order", type=int, choices=(1, 2, 3), default=1)
    s.add_argument("--grid", default="0.2:5:50", help="r0:r1:N")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--out", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_melnikov)

    s = sub.add_parser("wronskian-check", help="compare closed-form and numeric Wronskians")
    s.add_argument("--family", required=True, help="G0..G11, F1 or F2")
    s.add_argument("--k", type=str, help="ratio m/n, e.g. 1.8 or 9/5")
    s.add_argument("--grid", default="0.1:10:50", help="x0:x1:N (log-spaced)")
    s.add_argument("--digits", type=int, default=40)
    s.add_argument("--rtol", type=float, default=1e-8)
    s.add_argument("--out", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_wronskian_check)

    s = sub.add_parser("roots", help="isolate roots of a named polynomial")
    s.add_argument("--which", required=True, choices=("q1", "q2", "q3", "k6", "M", "N"))
    s.add_argument("--interval", required=True, help="lo:hi")
    s.add_argument("--width", type=float, default=1e-12)
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("cycles", help="limit cycles of a perturbed system")
    s.add_argument("--system", required=True)
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--window", default="0.2:5")
    s.add_argument("--samples", type=int, default=400)
    s.add_argument("--out", help="JSON path (default stdout)")
    s.set_defaults(func=cmd_cycles)

    s = sub.add_parser("displacement", help="tabulate P(r) - r")
    s.add_argument("--system", required=True)
    s.add_argument("--epsilon", type=float, help="overrides the value in the system file")
    s.add_argument("--grid", default="0.2:5:50")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_displacement)

    s = sub.add_parser("classify", help="zero counts and cycle lower bound for (m, n)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("reproduce-tables", help="all (m, n) up to --max with recomputed order-2 counts")
    s.add_argument("--max", type=int, default=12)
    s.add_argument("--out", help="directory for CSV/JSON/text output")
    s.set_defaults(func=cmd_reproduce_tables)

    s = sub.add_parser("verify", help="run the cross-validation suite")
    s.add_argument("--all", action="store_true")
    s.add_argument("--check", action="append", help="run only this check (repeatable)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PwlMelnikovError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
