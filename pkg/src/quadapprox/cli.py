"""Command-line front end.

Every subcommand prints one report on standard output.  Exit status is 0
on success, 2 when a search finds a violated bound, 1 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from ._ival import fmt_interval, ivprec
from .algebraic import AlgebraicNumber, height_report
from .baker import minimal_c_sweep, powers_2_vs_3
from .cmfield import is_quartic_cm, theorem_applicability
from .errors import QuadApproxError
from .muldep import (
    MulDepInstance,
    find_dependence_algebraic,
    find_dependence_rational,
    loxton_bound,
    parse_element,
)
from .normform import describe, norm_of_poly_at
from .poly import parse_poly
from .roots import START_PRECISION_BITS, isolate_roots, signature
from .search import search

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def parse_algebraic(text: str) -> AlgebraicNumber:
    return AlgebraicNumber.parse(text)


def _items(values: Sequence[str]) -> list[str]:
    """Expand '-' into the non-empty lines of standard input."""
    out = []
    for v in values:
        if v == "-":
            out.extend(line.strip() for line in sys.stdin if line.strip())
        else:
            out.append(v)
    return out


def _algebraic_or_poly(text: str):
    if "@" in text:
        return parse_algebraic(text)
    try:
        return AlgebraicNumber.rational(Fraction(text))
    except ValueError:
        return AlgebraicNumber.from_poly(parse_poly(text), 0)


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- subcommands -----------------------------------------------------------------
# each returns (payload dict, csv text or None, text lines, exit code)

def _cmd_heights(args):
    results = []
    for item in _items(args.items):
        a = _algebraic_or_poly(item)
        rep = height_report(a, args.tol)
        results.append({"input": item, "minpoly": list(a.minpoly.coeffs), **rep.to_dict()})
    rows = [[r["input"], r["naive_height"], *r["weil_height"]] for r in results]
    text = [f"{r['input']}: H = {r['naive_height']}, h in {r['weil_height']}" for r in results]
    payload = results[0] if len(results) == 1 else {"results": results}
    return payload, _rows_csv(["input", "naive_height", "weil_lo", "weil_hi"], rows), text, EXIT_OK


def _cmd_roots(args):
    results = []
    for item in _items(args.items):
        P = parse_poly(item)
        disks = isolate_roots(P, args.tol, args.precision_bits)
        sig = signature(P)
        results.append({
            "poly": list(P.coeffs),
            "signature": [sig.r1, sig.r2],
            "roots": [{"index": i, **k.to_dict()} for i, k in enumerate(disks)],
        })
    rows = [[str(r["poly"]), x["index"], *x["re_interval"], *x["im_interval"], x["is_real"]]
            for r in results for x in r["roots"]]
    text = []
    for r in results:
        text.append(f"{r['poly']}  signature {tuple(r['signature'])}")
        for x in r["roots"]:
            text.append(f"  @{x['index']}: re {x['re_interval']} im {x['im_interval']}")
    payload = results[0] if len(results) == 1 else {"results": results}
    header = ["poly", "index", "re_lo", "re_hi", "im_lo", "im_hi", "is_real"]
    return payload, _rows_csv(header, rows), text, EXIT_OK


def _cmd_norm(args):
    xi = parse_algebraic(args.xi)
    results = []
    for item in _items(args.polys):
        P = parse_poly(item)
        nv = norm_of_poly_at(xi, P)
        results.append({"P": list(P.coeffs), **nv.to_dict()})
    rows = [[str(r["P"]), r["value"], r["resultant"], r["lead_power"]] for r in results]
    text = [f"N(P(xi)) = {r['value']} for P = {r['P']}" for r in results]
    payload = {"xi": str(xi), "results": results}
    return payload, _rows_csv(["P", "norm", "resultant", "lead_power"], rows), text, EXIT_OK


def _cmd_liouville(args):
    results = [describe(parse_algebraic(item)) for item in _items(args.items)]
    rows = [[r["xi"], r["c1"], r["exponent"], r["c2"], r["case2_exponent"]] for r in results]
    text = [f"{r['xi']}: |xi - alpha| >= {r['c1_decimal']:.12g} H^-{r['exponent']}, "
            f"Case 2: >= {r['c2_decimal']:.12g} H^-{r['case2_exponent']}" for r in results]
    payload = results[0] if len(results) == 1 else {"results": results}
    return payload, _rows_csv(["xi", "c1", "exponent", "c2", "case2_exponent"], rows), text, EXIT_OK


def _cmd_search(args):
    xi = parse_algebraic(args.xi)
    rep = search(xi, args.height_max, threads=args.threads, prescreen=not args.no_prescreen)
    text = [f"xi = {xi}, H <= {args.height_max}, c1 = {float(rep.c1):.12g}, c2 = {float(rep.c2):.12g}",
            f"violations: {len(rep.violations)}, records: {len(rep.records)}, fitted exponent: {rep.fitted_exponent}"]
    for r in rep.records:
        text.append(f"  H={r.height:>4} {r.poly}  |xi-alpha| in {fmt_interval(r.distance)}  {r.case_label}")
    code = EXIT_VIOLATION if rep.violations else EXIT_OK
    return rep.to_dict(), rep.to_csv(), text, code


def _cmd_cm_check(args):
    results = [is_quartic_cm(parse_poly(item)).to_dict() for item in _items(args.polys)]
    rows = [[str(r["f"]), r["is_cm"], r["reason"], r["r"] or ""] for r in results]
    text = [f"{r['f']}: {'CM' if r['is_cm'] else 'not CM'} ({r['reason']})" + (f", conj(xi) = {r['r']}" if r["r"] else "")
            for r in results]
    payload = results[0] if len(results) == 1 else {"results": results}
    return payload, _rows_csv(["f", "is_cm", "reason", "r"], rows), text, EXIT_OK


def _cmd_applicability(args):
    results = []
    for item in _items(args.items):
        results.append({"xi": item, **theorem_applicability(parse_algebraic(item)).to_dict()})
    rows = [[r["xi"], r["status"], ";".join(r["flags"])] for r in results]
    text = [f"{r['xi']}: {r['status']}" + (f" [{', '.join(r['flags'])}]" if r["flags"] else "") for r in results]
    payload = results[0] if len(results) == 1 else {"results": results}
    return payload, _rows_csv(["xi", "status", "flags"], rows), text, EXIT_OK


def _cmd_muldep(args):
    base = parse_algebraic(args.xi) if args.xi else None
    elements = [parse_element(s, base) for s in _items(args.elements)]
    inst = MulDepInstance.build(elements, args.degree)
    bounds = [loxton_bound(inst, k) for k in range(1, inst.m + 1)]
    if base is None:
        rel = find_dependence_rational(elements)
    else:
        cap = args.exponent_cap if args.exponent_cap is not None else math.ceil(max(bounds))
        rel = find_dependence_algebraic(elements, cap)
    payload = rel.to_dict() if rel else {"exponents": None, "verified": False}
    payload.update({
        "elements": [str(e) for e in elements],
        "D": inst.D,
        "logA": [str(x) for x in inst.logA],
        "bounds": [str(math.ceil(b)) for b in bounds],
    })
    if rel:
        payload["within_bounds"] = all(abs(n) <= b for n, b in zip(rel.exponents, bounds))
    rows = [[",".join(map(str, rel.exponents)) if rel else "", bool(rel and rel.verified)]]
    text = [f"relation {list(rel.exponents)} (verified)" if rel else "no relation found"]
    return payload, _rows_csv(["exponents", "verified"], rows), text, EXIT_OK


def _cmd_baker_sweep(args):
    with ivprec(128):
        table = minimal_c_sweep(powers_2_vs_3(args.b_max, args.b_min, args.constant_c),
                                threads=args.threads, tol=args.tol)
    text = [f"B={r.B:>6} b={list(r.b)} log|Lambda| in {fmt_interval(r.log_lambda)} implied c {r.implied_c:.6g}"
            for r in table.rows]
    text.append(f"empirical c: {table.empirical_c}")
    return table.to_dict(), table.to_csv(), text, EXIT_OK


# --- parser ------------------------------------------------------------------------

def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _tolerance(s: str) -> Fraction:
    try:
        v = Fraction(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance {s!r}") from exc
    if v <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--tol", type=_tolerance, default=Fraction(1, 2**60), help="interval width target")
    common.add_argument("--precision-bits", type=_positive_int, default=START_PRECISION_BITS,
                        help="starting working precision for root isolation")
    common.add_argument("--threads", type=_positive_int, default=1)
    common.add_argument("--no-timestamp", action="store_true", help="omit the generated_at field")

    p = _Parser(prog="quadapprox", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("heights", parents=[common], help="naive and Weil heights")
    s.add_argument("items", nargs="+", help="'<poly>@<k>', a polynomial, a rational, or '-' for stdin")
    s.set_defaults(run=_cmd_heights)

    s = sub.add_parser("roots", parents=[common], help="certified isolating disks")
    s.add_argument("items", nargs="+", help="polynomials, or '-' for stdin")
    s.set_defaults(run=_cmd_roots)

    s = sub.add_parser("norm", parents=[common], help="exact norm of P(xi)")
    s.add_argument("--xi", required=True)
    s.add_argument("polys", nargs="+")
    s.set_defaults(run=_cmd_norm)

    s = sub.add_parser("liouville", parents=[common], help="explicit Liouville constants")
    s.add_argument("items", nargs="+")
    s.set_defaults(run=_cmd_liouville)

    s = sub.add_parser("search", parents=[common], help="enumerate quadratic approximants")
    s.add_argument("--xi", required=True)
    s.add_argument("--height-max", type=_positive_int, required=True)
    s.add_argument("--no-prescreen", action="store_true", help="certify every candidate")
    s.set_defaults(run=_cmd_search)

    s = sub.add_parser("cm-check", parents=[common], help="quartic CM-field test")
    s.add_argument("polys", nargs="+")
    s.set_defaults(run=_cmd_cm_check)

    s = sub.add_parser("applicability", parents=[common], help="does the improved exponent apply")
    s.add_argument("items", nargs="+")
    s.set_defaults(run=_cmd_applicability)

    s = sub.add_parser("muldep", parents=[common], help="multiplicative dependence")
    s.add_argument("elements", nargs="+", help="rationals p/q, or polynomials in xi with --xi")
    s.add_argument("--xi", help="generator for field elements, '<poly>@<k>'")
    s.add_argument("--degree", type=_positive_int, help="degree D of the generated field")
    s.add_argument("--exponent-cap", type=_positive_int)
    s.set_defaults(run=_cmd_muldep)

    s = sub.add_parser("baker-sweep", parents=[common], help="implied constants for 2^b 3^-k - 1")
    s.add_argument("--b-min", type=_positive_int, default=2)
    s.add_argument("--b-max", type=_positive_int, default=20)
    s.add_argument("--constant-c", type=float, default=1.0)
    s.set_defaults(run=_cmd_baker_sweep)
    return p


def _emit(payload, csv_text, text, args, out) -> None:
    if args.format == "csv" and csv_text is not None:
        out.write(csv_text)
    elif args.format == "text":
        out.write("\n".join(text) + "\n")
    else:
        if not args.no_timestamp:
            payload = {**payload, "generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")}
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        payload, csv_text, text, code = args.run(args)
    except (QuadApproxError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(payload, csv_text, text, args, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
