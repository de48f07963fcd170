"""Command-line interface.

Exit codes: 0 success, 1 property or constancy failure, 2 invalid input.

    bethe-spectra charpoly --degrees 1,3,2
    bethe-spectra lambda-min --degrees 1,3,4
    bethe-spectra family --prefix 1,3 --dk 2..6 --output csv
    bethe-spectra verify --seed 0 --trials 200
    bethe-spectra corona-check --n 3 --q 3
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import __version__, bethe, graphs, oracle, poly, verify
from .bethe import DegreeSequence, InvalidDegreeSequence
from .poly import DEFAULT_EPS, RootInterval

TOOL = "bethe-spectra"
DEFAULT_SEED = 0

log = logging.getLogger(TOOL)


class UsageError(Exception):
    """Bad input; maps to exit code 2."""


def decimal_string(x: Fraction, digits: int = 12) -> str:
    """x to ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(+(Decimal(x.numerator) / Decimal(x.denominator)))


def fixed_string(x: Fraction, places: int = 12) -> str:
    """x rounded to ``places`` digits after the decimal point."""
    with localcontext() as ctx:
        ctx.prec = 60
        return f"{Decimal(x.numerator) / Decimal(x.denominator):.{places}f}"


def parse_eps(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse eps {text!r}") from exc
    if eps <= 0:
        raise UsageError("eps must be positive")
    return eps


def parse_range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError as exc:
        raise UsageError(f"range must look like a..b, got {text!r}") from exc
    if lo > hi:
        raise UsageError("empty d_k range")
    return range(lo, hi + 1)


def parse_degrees(text: str | None, flag: str = "--degrees") -> DegreeSequence:
    if not text:
        raise UsageError(f"{flag} is required")
    try:
        return DegreeSequence.parse(text)
    except InvalidDegreeSequence as exc:
        raise UsageError(str(exc)) from exc


def header(args) -> dict:
    return {"tool": TOOL, "version": __version__, "seed": args.seed}


def interval_report(iv: RootInterval) -> dict:
    return {
        "interval": iv.to_json(),
        "approx": fixed_string(iv.midpoint),
        "exact": iv.is_exact,
    }


# --------------------------------------------------------------------------
# commands; each returns (exit_code, payload_for_json, text_lines, csv_rows)
# --------------------------------------------------------------------------


def cmd_charpoly(args):
    d = parse_degrees(args.degrees)
    fcp = bethe.char_poly_factored(d)
    expanded = fcp.expand()
    payload = {"factored": fcp.to_json(), "expanded": expanded.to_json()}
    text = [
        f"degrees: {d}",
        f"factored: {fcp.pretty()}",
        f"expanded: {expanded}",
    ]
    rows = [["power", "coefficient"]] + [[i, c] for i, c in enumerate(expanded.coeffs)]
    return 0, payload, text, rows


def lambda_min_of(d: DegreeSequence, eps: Fraction) -> tuple[RootInterval, int, str]:
    if d.dk >= 2:
        return (
            bethe.smallest_eigenvalue(d, eps),
            bethe.smallest_eigenvalue_multiplicity(d, eps),
            "g_(k-1)",
        )
    chi = bethe.char_poly_expanded(d)
    iv = poly.isolate_smallest_root(chi, eps)
    return iv, poly.root_multiplicity(chi, iv), "expanded characteristic polynomial"


def cmd_lambda_min(args):
    d = parse_degrees(args.degrees)
    iv, mult, source = lambda_min_of(d, args.eps)
    payload = {"degrees": list(d.d), **interval_report(iv), "multiplicity": mult, "source": source}
    approx = fixed_string(iv.midpoint)
    value = f"{iv.lo} exactly" if iv.is_exact else f"in ({iv.lo}, {iv.hi}], ~ {approx}"
    text = [f"degrees: {d}", f"lambda_min: {value}", f"multiplicity: {mult}", f"source: {source}"]
    rows = [
        ["lambda_min_lo", "lambda_min_hi", "approx", "multiplicity"],
        [decimal_string(iv.lo), decimal_string(iv.hi), approx, mult],
    ]
    return 0, payload, text, rows


FAMILY_HEADER = [
    "dk", "lambda_min_lo", "lambda_min_hi", "multiplicity",
    "lo_num", "lo_den", "hi_num", "hi_den",
]


def family_csv_rows(rows: list[bethe.FamilyRow]) -> list[list]:
    out = [FAMILY_HEADER]
    for r in rows:
        lo, hi = r.interval.lo, r.interval.hi
        out.append([
            r.dk, decimal_string(lo), decimal_string(hi), r.multiplicity,
            lo.numerator, lo.denominator, hi.numerator, hi.denominator,
        ])
    return out


def cmd_family(args):
    if not args.prefix:
        raise UsageError("--prefix is required")
    try:
        prefix = bethe.validate_prefix(int(t) for t in args.prefix.split(","))
    except (ValueError, InvalidDegreeSequence) as exc:
        raise UsageError(f"bad prefix: {exc}") from exc
    dks = parse_range(args.dk or "2..6")
    if dks.start < 2 or dks.stop - 1 > 64:
        raise UsageError("--dk must lie within 2..64")
    rows = bethe.family_scan(prefix, dks, args.eps)
    payload = {
        "prefix": list(prefix),
        "g_k_minus_1": rows[0].g_km1.to_json(),
        "rows": [
            {"dk": r.dk, **interval_report(r.interval), "multiplicity": r.multiplicity}
            for r in rows
        ],
    }
    text = [f"prefix: {','.join(map(str, prefix))}  g_(k-1) = {rows[0].g_km1}"]
    text += [
        f"d_k={r.dk:<3d} lambda_min ~ {fixed_string(r.interval.midpoint)}  multiplicity {r.multiplicity}"
        for r in rows
    ]
    text.append("g_(k-1) identical across all rows")
    return 0, payload, text, family_csv_rows(rows)


def cmd_verify(args):
    if args.max_size > 500:
        raise UsageError("--max-size must be <= 500")
    if args.trials < 0:
        raise UsageError("--trials must be >= 0")
    if args.graph:
        return verify_graph_file(Path(args.graph))
    report = verify.run_verify(args.seed, args.trials, args.max_size, args.inject_fault)
    status = "PASS" if report.passed else "FAIL"
    payload = {
        "trials": args.trials,
        "max_size": args.max_size,
        "checks_run": report.checks_run,
        "passed": report.passed,
        "failures": [vars(f) for f in report.failures],
    }
    text = [f"{status}: {report.checks_run} checks over {args.trials} trials (seed {args.seed})"]
    if args.trials == 0:
        text.append("warning: trials = 0, nothing was checked")
    for f in report.failures:
        text.append(f"failed check {f.check}: {f.message}")
        text.append(f"reproducer: {f.reproducer}")
    rows = [["check", "message", "reproducer"]] + [
        [f.check, f.message, f.reproducer] for f in report.failures
    ]
    return (0 if report.passed else 1), payload, text, rows


def verify_graph_file(path: Path):
    try:
        g = graphs.Graph.from_edge_list_text(path.read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read edge list {path}: {exc}") from exc
    if g.n == 0 or g.n > 500:
        raise UsageError("edge-list graph must have 1..500 vertices")
    chi = oracle.graph_char_poly(g)
    problems = verify.graph_consistency(g)
    iv = poly.isolate_smallest_root(chi)
    payload = {
        "graph": g.to_json(),
        "charpoly": chi.to_json(),
        "lambda_min": interval_report(iv),
        "problems": problems,
        "passed": not problems,
    }
    text = [
        f"graph: {g.n} vertices, {g.m} edges",
        f"charpoly: {chi}",
        f"lambda_min ~ {fixed_string(iv.midpoint)}",
        "PASS: exact and numeric spectra agree" if not problems else "FAIL",
    ] + problems
    rows = [["problem"]] + [[p] for p in problems]
    return (0 if not problems else 1), payload, text, rows


def corona_check(n: int, q: int) -> dict:
    """Compare L(B(1, q, n)) with K_n (x) K_q and K_n (x) K_(q-1) spectrally."""
    d = DegreeSequence((1, q, n))
    lg = graphs.line_graph(graphs.build_bethe_tree(d).graph)
    candidates = {
        "K_n*K_q": graphs.corona(graphs.complete_graph(n), graphs.complete_graph(q)),
        "K_n*K_(q-1)": graphs.corona(graphs.complete_graph(n), graphs.complete_graph(q - 1)),
    }
    chi_lg = oracle.graph_char_poly(lg)
    out = {
        "n": n,
        "q": q,
        "line_graph": {"vertices": lg.n, "lambda_min": fixed_string(poly.isolate_smallest_root(chi_lg).midpoint)},
        "coronas": {},
    }
    matches = []
    for name, g in candidates.items():
        chi = oracle.graph_char_poly(g)
        same = chi == chi_lg and sorted(g.degrees()) == sorted(lg.degrees())
        if same:
            matches.append(name)
        out["coronas"][name] = {
            "vertices": g.n,
            "lambda_min": fixed_string(poly.isolate_smallest_root(chi).midpoint),
            "cospectral_with_line_graph": chi == chi_lg,
            "matches": same,
        }
    out["matching"] = matches
    return out


def cmd_corona_check(args):
    n, q = args.n, args.q
    if n is None or q is None:
        raise UsageError("--n and --q are required")
    if n < 1 or q < 1:
        raise UsageError("n and q must be >= 1")
    if q < 2:
        raise UsageError("B(1, q, n) needs d_2 = q >= 2")
    if n * (q + 1) > 500:
        raise UsageError("graphs exceed 500 vertices")
    res = corona_check(n, q)
    verdict = ", ".join(res["matching"]) or "none"
    text = [
        f"n={n} q={q}: L(B(1,{q},{n})) has {res['line_graph']['vertices']} vertices, "
        f"lambda_min ~ {res['line_graph']['lambda_min']}",
    ]
    for name, info in res["coronas"].items():
        text.append(
            f"  {name}: {info['vertices']} vertices, lambda_min ~ {info['lambda_min']}, "
            f"{'MATCH' if info['matches'] else 'no match'}"
        )
    text.append(f"matching convention: {verdict}")
    rows = [["corona", "vertices", "lambda_min", "matches"]] + [
        [name, info["vertices"], info["lambda_min"], info["matches"]]
        for name, info in res["coronas"].items()
    ]
    return 0, res, text, rows


COMMANDS = {
    "charpoly": cmd_charpoly,
    "lambda-min": cmd_lambda_min,
    "family": cmd_family,
    "verify": cmd_verify,
    "corona-check": cmd_corona_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", default=None, help="isolation width, 'p/q' or decimal (default 2^-40)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--output", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog=TOOL, description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", parents=[common], help="factored and expanded characteristic polynomial")
    p.add_argument("--degrees")
    p = sub.add_parser("lambda-min", parents=[common], help="certified smallest eigenvalue")
    p.add_argument("--degrees")
    p = sub.add_parser("family", parents=[common], help="lambda_min across a range of d_k")
    p.add_argument("--prefix")
    p.add_argument("--dk", help="range a..b")
    p = sub.add_parser("verify", parents=[common], help="randomised oracle cross-checks")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-size", type=int, default=200)
    p.add_argument("--graph", help="edge-list file ('u v' per line) to cross-check instead")
    p.add_argument("--inject-fault", choices=("sigma",), default=None, help=argparse.SUPPRESS)
    p = sub.add_parser("corona-check", parents=[common], help="which corona is L(B(1,q,n))")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    return parser


def render(args, code: int, payload: dict, text: list[str], rows: list[list]) -> str:
    if args.output == "json":
        doc = {"header": header(args), "command": args.command, "exit_code": code, "result": payload}
        return json.dumps(doc, indent=2) + "\n"
    if args.output == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"# {TOOL} {__version__} seed={args.seed}"])
        writer.writerows(rows)
        return buf.getvalue()
    return "\n".join([f"# {TOOL} {__version__} seed={args.seed}"] + text) + "\n"


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.eps = parse_eps(args.eps) if args.eps is not None else DEFAULT_EPS
        code, payload, text, rows = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (bethe.ConstancyViolation, bethe.MultiplicityMismatch, bethe.InterlacingViolation) as exc:
        print(f"FAIL: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out = render(args, code, payload, text, rows)
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
