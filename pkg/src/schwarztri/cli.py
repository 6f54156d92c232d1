"""Command-line front end.

Four commands, each emitting one JSON document on stdout (sweeps additionally
stream newline-delimited records):

    classify-equation --inv-angles 1/2,1/3,1/7 | generic
    classify-group    --sig 2,3,inf
    verify {principal,riccati,pullback} --inv-angles ... [--phi EXPR] ...
    sweep  --max-den 6 [--out results.ndjson]

Exit codes: 0 pass/success, 1 verification failure or sweep disagreement,
2 usage or parse error.  Output is deterministic for fixed flags apart from
the elapsed_ms field.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .groups import Geometry, Signature, geometry, group_report
from .minimality import classify
from .monodromy import InconclusiveError, classify_projective, monodromy
from .rational import RatFunc
from .series import residual_principal, residual_riccati, verify_pullback
from .triangle import AngleParams, build_r


@dataclass(frozen=True)
class CommandResult:
    command: str
    inputs: dict
    result: dict
    elapsed_ms: int

    def to_record(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "elapsed_ms": self.elapsed_ms,
        }


class UsageError(ValueError):
    pass


# -- rational expression parser for --phi -------------------------------------


class _ExprParser:
    """Recursive-descent parser for one-variable rational expressions:
    integers, y, + - * / ^ and parentheses; ^ takes integer exponents."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise UsageError(f"phi expression, position {self.pos}: {message}")

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> RatFunc:
        value = self.expr()
        if self.peek():
            self.fail(f"unexpected character {self.peek()!r}")
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while (op := self.peek()) in ("+", "-"):
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.factor()
        while (op := self.peek()) in ("*", "/"):
            self.pos += 1
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    self.fail("division by zero")
                value = value / rhs
        return value

    def factor(self) -> RatFunc:
        sign = 1
        while (c := self.peek()) in ("+", "-"):
            if c == "-":
                sign = -sign
            self.pos += 1
        value = self.atom()
        if self.peek() == "^":
            self.pos += 1
            value = value ** self.integer()
        return value * sign

    def atom(self) -> RatFunc:
        c = self.peek()
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return value
        if c == "y":
            self.pos += 1
            return RatFunc.variable()
        if c.isdigit():
            return RatFunc.constant(self.unsigned_integer())
        self.fail(f"expected a number, 'y' or '(', got {c!r}" if c else "unexpected end of input")

    def integer(self) -> int:
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        return sign * self.unsigned_integer()

    def unsigned_integer(self) -> int:
        c = self.peek()
        if not c.isdigit():
            self.fail("expected an integer")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])


def parse_phi(text: str) -> RatFunc:
    phi = _ExprParser(text).parse()
    return phi


# -- sweep core ---------------------------------------------------------------


def exponent_values(max_den: int) -> list[Fraction]:
    """Reduced fractions in (0, 1) with denominator at most ``max_den``, ascending."""
    values = {
        Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q)
    }
    return sorted(values)


def sweep_records(
    max_den: int,
    tol: float = 1e-6,
    taylor_order: int = 36,
) -> tuple[list[dict], dict]:
    """Compare the exact classifier with the monodromy oracle on every
    unordered reduced exponent triple with denominators <= max_den.

    Both sides are permutation invariant, so unordered triples cover the full
    ordered sweep; the records come out in canonical ascending order.
    """
    if max_den < 2:
        raise UsageError("--max-den must be at least 2")
    values = exponent_values(max_den)
    records = []
    agreements = disagreements = inconclusive = 0
    for t0, t1, t2 in itertools.combinations_with_replacement(values, 3):
        params = AngleParams(e_alpha=t2, e_beta=t0, e_gamma=t1)
        verdict = classify(params)
        witness = verdict.witness.to_record() if verdict.witness else None
        rep = monodromy(params, taylor_order=taylor_order)
        try:
            oracle = classify_projective(rep, tol=tol)
            oracle_record = oracle.to_record()
            oracle_integrable = oracle.kind in ("finite", "dihedral", "triangularizable")
            agree: Optional[bool] = oracle_integrable == (not verdict.strongly_minimal)
        except InconclusiveError as exc:
            oracle_record = {"kind": "inconclusive", "detail": str(exc)}
            agree = None
        if agree is None:
            inconclusive += 1
        elif agree:
            agreements += 1
        else:
            disagreements += 1
        records.append(
            {
                "triple": [str(t0), str(t1), str(t2)],
                "verdict": verdict.verdict.value,
                "witness": witness,
                "oracle": oracle_record,
                "agree": agree,
            }
        )
    summary = {
        "cases": len(records),
        "agreements": agreements,
        "disagreements": disagreements,
        "inconclusive": inconclusive,
    }
    return records, summary


# -- commands -------------------------------------------------------------------


def _emit(result: CommandResult) -> None:
    print(json.dumps(result.to_record(), sort_keys=True))


def _cmd_classify_equation(args) -> int:
    params = AngleParams.parse(args.inv_angles)
    start = time.perf_counter()
    verdict = classify(params)
    elapsed = int(1000 * (time.perf_counter() - start))
    _emit(
        CommandResult(
            command="classify-equation",
            inputs={"inv_angles": args.inv_angles},
            result=verdict.to_record(),
            elapsed_ms=elapsed,
        )
    )
    return 0


def _cmd_classify_group(args) -> int:
    sig = Signature.parse(args.sig)
    start = time.perf_counter()
    geo = geometry(sig)
    if geo is Geometry.HYPERBOLIC:
        payload = group_report(sig).to_record()
    else:
        # arithmetic/maximality theory is stated for hyperbolic signatures only
        payload = {
            "geometry": geo.value,
            "arithmetic": None,
            "maximal": None,
            "in_m": None,
            "in_w": None,
            "special_polynomials": None,
            "note": "non-hyperbolic signature: group-theoretic fields not applicable",
        }
    payload["signature"] = sig.as_text()
    elapsed = int(1000 * (time.perf_counter() - start))
    _emit(
        CommandResult(
            command="classify-group",
            inputs={"sig": args.sig},
            result=payload,
            elapsed_ms=elapsed,
        )
    )
    return 0


def _cmd_verify(args) -> int:
    params = AngleParams.parse(args.inv_angles)
    if params.is_generic:
        raise UsageError("verification needs exact parameter values, not 'generic'")
    r = build_r(params)
    base = Fraction(args.base)
    phi = None
    start = time.perf_counter()
    if args.kind == "principal":
        report = residual_principal(r, base, args.order)
    elif args.kind == "riccati":
        report = residual_riccati(r, base, args.order)
    else:
        if args.phi is None:
            raise UsageError("verify pullback requires --phi")
        phi = parse_phi(args.phi)
        report = verify_pullback(r, phi, base, args.order)
    elapsed = int(1000 * (time.perf_counter() - start))
    passed = report.max_abs_residual < args.tol
    _emit(
        CommandResult(
            command="verify",
            inputs={
                "kind": args.kind,
                "inv_angles": args.inv_angles,
                "phi": args.phi,
                "order": args.order,
                "base": args.base,
                "tol": args.tol,
            },
            result={
                "equation": r.to_text(),
                "phi": phi.to_text() if phi is not None else None,
                "report": report.to_record(),
                "tolerance": args.tol,
                "passed": passed,
            },
            elapsed_ms=elapsed,
        )
    )
    return 0 if passed else 1


def _cmd_sweep(args) -> int:
    start = time.perf_counter()
    sink = None
    if args.out:
        try:
            sink = open(args.out, "w", encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write --out path: {exc}") from exc
    records, summary = sweep_records(args.max_den, tol=args.tol, taylor_order=args.taylor_order)
    lines = [json.dumps(rec, sort_keys=True) for rec in records]
    if sink is not None:
        with sink:
            sink.write("\n".join(lines) + "\n")
        summary["out_path"] = args.out
    else:
        for line in lines:
            print(line)
        summary["out_path"] = None
    elapsed = int(1000 * (time.perf_counter() - start))
    _emit(
        CommandResult(
            command="sweep",
            inputs={"max_den": args.max_den, "tol": args.tol},
            result=summary,
            elapsed_ms=elapsed,
        )
    )
    return 0 if summary["disagreements"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schwarztri",
        description="Exact integrability classification and numerical verification "
        "for Schwarz triangle equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "classify-equation",
        help="decide strong minimality from exact inverse angle parameters",
    )
    p.add_argument(
        "--inv-angles",
        required=True,
        help="three exact fractions '1/2,1/3,1/7' (inverse angles; 0 encodes infinity) "
        "or the literal 'generic'",
    )
    p.set_defaults(func=_cmd_classify_equation)

    p = sub.add_parser("classify-group", help="classify a triangle-group signature")
    p.add_argument("--sig", required=True, help="signature 'k,l,m' with entries >= 2 or 'inf'")
    p.set_defaults(func=_cmd_classify_group)

    p = sub.add_parser("verify", help="numerical residual checks of the differential identities")
    p.add_argument("kind", choices=("principal", "riccati", "pullback"))
    p.add_argument("--inv-angles", required=True, help="exact fractions 'a,b,c'")
    p.add_argument(
        "--phi",
        default=None,
        help="rational expression in y for the pullback map, e.g. 'y^2' or '(y-1)/(y+1)' "
        "(integers, + - * / ^ with integer exponents)",
    )
    p.add_argument("--order", type=int, default=40, help="series truncation order (default 40)")
    p.add_argument("--base", default="1/2", help="series base point as an exact fraction (default 1/2)")
    p.add_argument("--tol", type=float, default=1e-8, help="pass/fail residual tolerance (default 1e-8)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser(
        "sweep",
        help="compare the exact classifier with the monodromy oracle over all "
        "reduced exponent triples with bounded denominators",
    )
    p.add_argument("--max-den", type=int, required=True, help="denominator bound (>= 2)")
    p.add_argument("--out", default=None, help="path for newline-delimited per-triple records")
    p.add_argument("--tol", type=float, default=1e-6, help="oracle tolerance (default 1e-6)")
    p.add_argument("--taylor-order", type=int, default=36, help="continuation series order")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
