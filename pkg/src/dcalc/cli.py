"""Command-line front end.

Subcommands: check (proof files), type, nf, trace, sem, norm (expressions).
Axiom schemes are disabled unless --axioms lists them; --fuel bounds every
reduction (DCALC_FUEL serves as the environment fallback); --json switches
diagnostics to JSON lines.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .axioms import resolve_axiom_gate
from .corpus import check_document
from .norms import norm, norm_to_text
from .parser import ParseError, parse_document, parse_term
from .reduction import (
    DEFAULT_FUEL,
    FuelExhausted,
    reduce_nf,
    reduce_trace,
)
from .semantics import encode, lam_to_text, strip
from .syntax import Context, to_text
from .typecheck import TypingError, synth


@dataclass
class CheckReport:
    file: str
    declarations_checked: int = 0
    deductions_checked: int = 0
    errors: list[dict] = field(default_factory=list)
    elapsed: float = 0.0


def _diag(err: TypingError) -> dict:
    at = ".".join(str(i) for i in err.path) if err.path else "root"
    out = {"kind": err.kind, "path": at, "message": err.message}
    if err.expected is not None:
        out["expected"] = to_text(err.expected)
    if err.found is not None:
        out["found"] = to_text(err.found)
    return out


def _emit_diag(diag: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(diag), file=sys.stderr)
        return
    line = f"{diag['kind']} @ {diag['path']}: {diag['message']}"
    print(line, file=sys.stderr)
    if "expected" in diag:
        print(f"  expected: {diag['expected']}", file=sys.stderr)
    if "found" in diag:
        print(f"  found:    {diag['found']}", file=sys.stderr)


def _parse_failure(err: ParseError, as_json: bool) -> int:
    diag = {"kind": "ParseError", "path": f"{err.line}:{err.col}", "message": str(err)}
    _emit_diag(diag, as_json)
    return 1


def _fuel_failure(err: FuelExhausted, as_json: bool) -> int:
    diag = {"kind": "FuelExhausted", "path": "root", "message": str(err)}
    _emit_diag(diag, as_json)
    return 1


def cmd_check(args: argparse.Namespace) -> int:
    gate = args.gate
    failed = False
    for path in args.paths:
        started = time.monotonic()
        report = CheckReport(file=path)
        try:
            text = open(path).read()
        except OSError as err:
            report.errors.append(
                {"kind": "IOError", "path": "root", "message": str(err)}
            )
            failed = True
            _finish_report(report, started, args.json)
            continue
        try:
            doc = parse_document(text, gate)
        except ParseError as err:
            report.errors.append(
                {
                    "kind": "ParseError",
                    "path": f"{err.line}:{err.col}",
                    "message": str(err),
                }
            )
            failed = True
            _finish_report(report, started, args.json)
            continue
        report.declarations_checked = len(doc.context.entries)
        report.deductions_checked = len(doc.checks)
        report.errors = [_diag(e) for e in check_document(doc, args.fuel)]
        if report.errors:
            failed = True
        _finish_report(report, started, args.json)
        if args.trace and not report.errors:
            for item in doc.checks:
                try:
                    for at, name, term in reduce_trace(item.term, args.fuel):
                        at_text = ".".join(str(i) for i in at) if at else "root"
                        print(f"{name} @ {at_text} : {to_text(term)}")
                except FuelExhausted:
                    pass
    return 1 if failed else 0


def _finish_report(report: CheckReport, started: float, as_json: bool) -> None:
    report.elapsed = time.monotonic() - started
    if as_json:
        print(
            json.dumps(
                {
                    "file": report.file,
                    "declarations_checked": report.declarations_checked,
                    "deductions_checked": report.deductions_checked,
                    "errors": report.errors,
                    "elapsed": round(report.elapsed, 6),
                }
            )
        )
        return
    status = "ok" if not report.errors else f"{len(report.errors)} error(s)"
    print(
        f"{report.file}: {status} "
        f"({report.declarations_checked} declarations, "
        f"{report.deductions_checked} deductions, {report.elapsed:.3f}s)"
    )
    for diag in report.errors:
        _emit_diag(diag, as_json=False)


def _load_context(args: argparse.Namespace) -> Context | None:
    """Parse and check the optional --context file; None on failure."""
    if not args.context:
        return Context()
    try:
        doc = parse_document(open(args.context).read(), args.gate)
    except OSError as err:
        _emit_diag({"kind": "IOError", "path": "root", "message": str(err)}, args.json)
        return None
    except ParseError as err:
        _parse_failure(err, args.json)
        return None
    errors = check_document(doc, args.fuel)
    for e in errors:
        _emit_diag(_diag(e), args.json)
    return None if errors else doc.context


def cmd_type(args: argparse.Namespace) -> int:
    ctx = _load_context(args)
    if ctx is None:
        return 1
    try:
        e = parse_term(args.expr, args.gate)
        print(to_text(synth(ctx, e, args.fuel)))
        return 0
    except ParseError as err:
        return _parse_failure(err, args.json)
    except TypingError as err:
        _emit_diag(_diag(err), args.json)
        return 1
    except FuelExhausted as err:
        return _fuel_failure(err, args.json)


def cmd_nf(args: argparse.Namespace) -> int:
    try:
        e = parse_term(args.expr, args.gate)
        print(to_text(reduce_nf(e, args.fuel)))
        return 0
    except ParseError as err:
        return _parse_failure(err, args.json)
    except FuelExhausted as err:
        return _fuel_failure(err, args.json)


def cmd_trace(args: argparse.Namespace) -> int:
    try:
        e = parse_term(args.expr, args.gate)
        steps = reduce_trace(e, args.fuel)
    except ParseError as err:
        return _parse_failure(err, args.json)
    except FuelExhausted as err:
        return _fuel_failure(err, args.json)
    final = e if not steps else steps[-1][2]
    if args.json:
        for at, name, term in steps:
            at_text = ".".join(str(i) for i in at) if at else "root"
            print(json.dumps({"axiom": name, "path": at_text, "term": to_text(term)}))
    else:
        for at, name, term in steps:
            at_text = ".".join(str(i) for i in at) if at else "root"
            print(f"{name} @ {at_text} : {to_text(term)}")
    print(to_text(final) if not args.json else json.dumps({"nf": to_text(final)}))
    return 0


def cmd_sem(args: argparse.Namespace) -> int:
    try:
        e = parse_term(args.expr, args.gate)
    except ParseError as err:
        return _parse_failure(err, args.json)
    mapped = encode(e) if args.encode else strip(e)
    print(lam_to_text(mapped))
    return 0


def cmd_norm(args: argparse.Namespace) -> int:
    ctx = _load_context(args)
    if ctx is None:
        return 1
    try:
        e = parse_term(args.expr, args.gate)
    except ParseError as err:
        return _parse_failure(err, args.json)
    n = norm(ctx, e)
    print("undefined" if n is None else norm_to_text(n))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="dcalc", description="d-calculus proof checker")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--fuel",
            type=int,
            default=None,
            help=f"reduction step budget (default {DEFAULT_FUEL}, env DCALC_FUEL)",
        )
        p.add_argument(
            "--axioms",
            default="",
            help="comma-separated axiom schemes or families to enable (or 'all')",
        )
        p.add_argument("--json", action="store_true", help="JSON-lines diagnostics")

    p = sub.add_parser("check", help="check proof files")
    p.add_argument("paths", nargs="+")
    p.add_argument("--trace", action="store_true", help="print reduction traces")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("type", help="synthesize the type of an expression")
    p.add_argument("expr")
    p.add_argument("--context", help="proof file supplying the context")
    common(p)
    p.set_defaults(fn=cmd_type)

    p = sub.add_parser("nf", help="print the normal form")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=cmd_nf)

    p = sub.add_parser("trace", help="print every reduction step")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("sem", help="translate to untyped lambda calculus")
    p.add_argument("expr")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--strip", action="store_true", help="type-stripping (default)")
    mode.add_argument("--encode", action="store_true", help="type-encoding")
    common(p)
    p.set_defaults(fn=cmd_sem)

    p = sub.add_parser("norm", help="print the norm of an expression")
    p.add_argument("expr")
    p.add_argument("--context", help="proof file supplying the context")
    common(p)
    p.set_defaults(fn=cmd_norm)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.fuel is None:
        args.fuel = int(os.environ.get("DCALC_FUEL", DEFAULT_FUEL))
    try:
        tokens = [t for t in args.axioms.split(",") if t.strip()]
        args.gate = resolve_axiom_gate(tokens)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
