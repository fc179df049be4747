"""Command-line front end: ``etaq <command> [args] [--depth D] [--format text|json] [--output PATH]``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import prover
from .etaforms import QuotientParseError, order_table, parse_quotient
from .expr import ExprParseError, evaluate, parse_expr
from .hauptmodul import INCONCLUSIVE, PROVED, REFUTED, VERIFIED, express_in_generator
from .modgroup import cusp_set
from .series import SeriesError, format_series

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_VERDICT_EXIT = {PROVED: EXIT_OK, VERIFIED: EXIT_OK, REFUTED: EXIT_REFUTED, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


def _depth(text: str) -> Fraction:
    try:
        d = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid depth {text!r}") from None
    if d <= 0:
        raise argparse.ArgumentTypeError("depth must be positive")
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=_depth, default=None, help="grid steps (default 200; 120 for Bailey pairs)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", default=None, help="write here instead of standard output")

    p = argparse.ArgumentParser(prog="etaq", description="q-series, cusps and Lambert series identities")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cusps", parents=[common], help="cusps of Gamma_0(N) with widths")
    c.add_argument("N", type=int)

    o = sub.add_parser("orders", parents=[common], help="order table of an (generalized) eta-quotient")
    o.add_argument("spec", help='e.g. "geta(12;5)^2*geta(12;1)^-2"')
    o.add_argument("N", type=int)

    e = sub.add_parser("expand", parents=[common], help="q-expansion of an expression")
    e.add_argument("expr")

    s = sub.add_parser("solve", parents=[common], help="write f as a polynomial of degree <= m in g")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("m", type=int)

    v = sub.add_parser("verify", parents=[common], help="verify a registry identity or an ad-hoc pair")
    v.add_argument("target", nargs="+", help="registry id, or two expressions lhs rhs")

    sub.add_parser("reproduce", parents=[common], help="run the full reproduction report")
    sub.add_parser("registry", parents=[common], help="list registry identities")
    return p


# ---------------------------------------------------------------------------
# commands return (exit code, json payload, text)

def cmd_cusps(args):
    if args.N < 1:
        raise UsageError("N must be at least 1")
    table = cusp_set(args.N)
    text = "\n".join(f"{r} width {w}" for r, w in table)
    return EXIT_OK, table.to_json(), text


def cmd_orders(args):
    q = parse_quotient(args.spec)
    t = order_table(q, args.N, name=args.spec)
    return EXIT_OK, t.to_json(), t.render()


def cmd_expand(args):
    e = parse_expr(args.expr)
    depth = args.depth or prover.HEADLINE_DEPTH
    M = prover.natural_grid(e)
    s = evaluate(e, depth / M)
    return EXIT_OK, {"grid": M, "series": s.to_json(), "text": format_series(s)}, format_series(s)


def cmd_solve(args):
    f_expr, g_expr = parse_expr(args.f), parse_expr(args.g)
    depth = args.depth or prover.HEADLINE_DEPTH
    f = evaluate(f_expr, depth)
    g = evaluate(g_expr, depth + args.m + 1)
    try:
        poly, rem = express_in_generator(f, g, args.m)
    except (ValueError, SeriesError) as exc:
        return EXIT_REFUTED, {"verdict": REFUTED, "reason": str(exc)}, f"refuted: {exc}"
    payload = {"coeffs": poly.to_json(), "poly": poly.format("g"), "checked_below": str(rem.precision)}
    if rem.coeffs:
        e, c = rem.leading()
        payload.update(verdict=REFUTED, failure={"exponent": str(e), "coefficient": str(c)})
        return EXIT_REFUTED, payload, f"{poly.format('g')}\nremainder starts {c}*q^{e}"
    payload["verdict"] = VERIFIED
    return EXIT_OK, payload, f"{poly.format('g')}\nremainder vanishes below q^{rem.precision}"


def cmd_verify(args):
    if len(args.target) == 1:
        try:
            stmt = prover.lookup(args.target[0])
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    elif len(args.target) == 2:
        stmt = prover.IdentityStatement("ad-hoc", parse_expr(args.target[0]), parse_expr(args.target[1]), 0, "heuristic")
    else:
        raise UsageError("verify takes a registry id or two expressions")
    cert = prover.verify(stmt, args.depth)
    text = f"{cert.id}: {cert.verdict}\n{cert.reason}"
    if cert.poly is not None:
        text += f"\npolynomial {cert.poly.to_json()}"
    if cert.axioms:
        text += "\naxioms:\n" + "\n".join(f"  - {a}" for a in cert.axioms)
    return _VERDICT_EXIT[cert.verdict], cert.to_json(), text


def cmd_reproduce(args):
    depth = int(args.depth or prover.HEADLINE_DEPTH)
    if depth < 60:
        raise UsageError("reproduce needs a depth of at least 60")
    rep = prover.reproduce_paper(depth)
    return (EXIT_OK if rep.ok else EXIT_REFUTED), rep.to_json(), rep.render()


def cmd_registry(args):
    rows = [st.to_json() for st in prover.registry()]
    text = "\n".join(f"{r['id']:<10} {r['kind']:<10} {r['proof_mode']:<11} {r['title']}" for r in rows)
    return EXIT_OK, rows, text


COMMANDS = {
    "cusps": cmd_cusps,
    "orders": cmd_orders,
    "expand": cmd_expand,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "reproduce": cmd_reproduce,
    "registry": cmd_registry,
}


def _emit(args, payload, text) -> None:
    out = json.dumps(payload, indent=2) if args.format == "json" else text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, payload, text = COMMANDS[args.command](args)
    except (UsageError, QuotientParseError, ExprParseError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc), "position": getattr(exc, "position", None)}}
        if args.format == "json":
            _emit(args, err, "")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, payload, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
