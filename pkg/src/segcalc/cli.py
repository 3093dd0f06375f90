"""Command line interface: ``segcalc <command> [payload] [options]``.

Exit codes: 0 success, 1 failed check or computation error, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .classical import SigmaContext, jacmin_length_classical, mu_star
from .config import load_config
from .cusp import CuspContext
from .decide import decide
from .derivative import (
    classify_critical,
    is_critical,
    left_derivative_set,
    lnrset,
    right_derivative_set,
    rnrset,
)
from .errors import QuerySyntaxError, SegcalcError, UnknownSuite, ValidationError
from .harness import SUITES, enumerate_multisegments, run_suite
from .multiseg import Multisegment
from .parse import parse_multisegment, parse_points, parse_window
from .ring import GrElement, comod, comodmax, comult, jacmin_length

COMMANDS = (
    "decide",
    "comult",
    "comod",
    "comodmax",
    "mustar",
    "derive",
    "lnrset",
    "jacmin",
    "critical",
    "verify",
    "enumerate",
)
NEEDS_MSEG = {"decide", "comult", "comod", "comodmax", "mustar", "derive", "lnrset", "jacmin"}


@dataclass
class Query:
    command: str
    payload: Optional[Multisegment] = None
    points: frozenset = frozenset()
    side: str = "left"
    line: Optional[str] = None
    format: str = "text"
    window: Optional[tuple[int, int]] = None
    max_degree: Optional[int] = None
    suite: Optional[str] = None
    config: Optional[str] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise QuerySyntaxError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="segcalc", description="Multisegment calculus for GL and classical groups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("payload", nargs="?", help="multisegment such as '[r[0],r[2]] + [r[-1],r[0]]'; a line name for enumerate")
    p.add_argument("--config", help="JSON configuration file (default: one self-dual line r, empty cuspred)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--window", help="index window a..b")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--suite", help="suite for verify (default: all)")
    p.add_argument("--rho", default="", help="comma-separated points for derive")
    p.add_argument("--side", choices=("left", "right"), default="left")
    return p


def _join_window(argv: Sequence[str]) -> list[str]:
    """Glue ``--window`` to its value so that ``--window -2..2`` parses."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            out.append(f"--window={next(it, '')}")
        else:
            out.append(a)
    return out


def _query_from_args(args: argparse.Namespace, ctx: Optional[CuspContext]) -> Query:
    q = Query(
        command=args.command,
        side=args.side,
        format=args.format,
        max_degree=args.max_degree,
        suite=args.suite,
        config=args.config,
    )
    if args.window is not None:
        q.window = parse_window(args.window)
    if q.max_degree is not None and q.max_degree < 0:
        raise QuerySyntaxError("--max-degree must be non-negative")
    if q.command in NEEDS_MSEG:
        if args.payload is None:
            raise QuerySyntaxError(f"{q.command} needs a multisegment argument")
        q.payload = parse_multisegment(args.payload, ctx)
    elif q.command == "enumerate":
        q.line = args.payload
        if q.window is None or q.max_degree is None:
            raise QuerySyntaxError("enumerate needs --window and --max-degree")
    elif args.payload is not None:
        raise QuerySyntaxError(f"{q.command} takes no positional argument")
    if q.command == "derive":
        q.points = parse_points(args.rho, ctx)
        if not q.points:
            raise QuerySyntaxError("derive needs --rho")
    return q


def parse_query(text: str, ctx: Optional[CuspContext] = None) -> Query:
    """Parse a command line given as one string, e.g. ``decide "[r[0],r[1]]"``."""
    try:
        argv = shlex.split(text)
    except ValueError as exc:
        raise QuerySyntaxError(str(exc)) from None
    return _query_from_args(build_parser().parse_args(_join_window(argv)), ctx)


def _terms_json(elem) -> dict:
    return {"terms": [{"coeff": v, "left": str(a), "right": str(b)} for (a, b), v in elem.sorted_items()]}


def _terms_text(elem) -> str:
    if not elem:
        return "0"
    return "\n".join(f"{v:+d}  {a} ⊗ {b}" for (a, b), v in elem.sorted_items())


def _run(q: Query, ctx: CuspContext, sigma: SigmaContext) -> tuple[object, str, int]:
    """Execute a query; returns (json payload, text, exit code)."""
    m = q.payload
    if q.command == "decide":
        d = decide(ctx, sigma, m)
        text = f"{d.status.value}"
        for app in d.certificate:
            text += f"\n  {app.rule} ({app.anchor})"
            for k, v in sorted(app.witness.items()):
                text += f"\n    {k}: {v}"
        if d.reason:
            text += f"\n  reason: {d.reason}"
        return d.to_json(), text, 0
    if q.command in ("comult", "comod"):
        fn = comult if q.command == "comult" else comod
        elem = fn(ctx, GrElement.z(m))
        return _terms_json(elem), _terms_text(elem), 0
    if q.command == "comodmax":
        elem = comodmax(ctx, GrElement.z(m))
        data = {"terms": [{"coeff": v, "left": str(w), "right": "1"} for w, v in elem.sorted_items()]}
        text = "\n".join(f"{v:+d}  {w}" for w, v in elem.sorted_items()) or "0"
        return data, text, 0
    if q.command == "mustar":
        elem = mu_star(ctx, sigma, GrElement.z(m))
        data = _terms_json(elem)
        data["classical"] = sigma.name
        return data, _terms_text(elem), 0
    if q.command == "jacmin":
        gl = jacmin_length(ctx, GrElement.z(m))
        cl = jacmin_length_classical(ctx, sigma, m)
        return {"gl": gl, "classical": cl}, f"gl: {gl}\nclassical: {cl}", 0
    if q.command == "lnrset":
        left = sorted(str(p) for p in lnrset(ctx, m))
        right = sorted(str(p) for p in rnrset(ctx, m))
        text = f"lnrset: {{{', '.join(left)}}}\nrnrset: {{{', '.join(right)}}}"
        return {"lnrset": left, "rnrset": right}, text, 0
    if q.command == "derive":
        step = left_derivative_set if q.side == "left" else right_derivative_set
        out = step(ctx, m, q.points)
        shown = str(out) if out else "0"
        return {"side": q.side, "rho": sorted(str(p) for p in q.points), "result": shown}, shown, 0
    if q.command == "enumerate":
        line = q.line or sorted(ctx.lines)[0]
        ms = [str(x) if x else "0" for x in enumerate_multisegments(ctx, line, q.window, q.max_degree)]
        return {"line": line, "count": len(ms), "multisegments": ms}, "\n".join(ms), 0
    if q.command == "critical":
        return _critical(q, ctx, sigma)
    if q.command == "verify":
        names = [q.suite] if q.suite else list(SUITES)
        if q.suite and q.suite not in SUITES:
            raise UnknownSuite(f"unknown suite {q.suite!r}; known: {', '.join(SUITES)}")
        use_ctx = ctx if q.config else None
        use_sigma = sigma if q.config else None
        reports = [run_suite(n, use_ctx, use_sigma, q.window, q.max_degree) for n in names]
        code = 0 if all(r.passed for r in reports) else 1
        return [r.to_json() for r in reports], "\n".join(str(r) for r in reports), code
    raise QuerySyntaxError(f"unknown command {q.command!r}")


def _critical(q: Query, ctx: CuspContext, sigma: SigmaContext) -> tuple[object, str, int]:
    window = q.window or (-3, 3)
    max_degree = 6 if q.max_degree is None else q.max_degree
    lines = sorted({p.line for p in sigma.cuspred}) or sorted(ctx.lines)
    rows = []
    for line in lines:
        for m in enumerate_multisegments(ctx, line, window, max_degree):
            if is_critical(ctx, sigma, m):
                try:
                    kind = str(classify_critical(ctx, sigma, m))
                except SegcalcError as exc:
                    kind = f"unclassified: {exc}"
                rows.append((str(m), kind))
    report = run_suite("critical-classification", ctx, sigma, window, max_degree)
    data = {"critical": [{"multisegment": a, "type": b} for a, b in rows], "report": report.to_json()}
    width = max((len(a) for a, _ in rows), default=0)
    text = "\n".join(f"{a.ljust(width)}  {b}" for a, b in rows)
    text = f"{text}\n{report}" if text else str(report)
    return data, text, 0 if report.passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = _join_window(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        ctx, sigma = load_config(args.config)
        q = _query_from_args(args, ctx)
    except (QuerySyntaxError, ValidationError, OSError) as exc:
        print(f"segcalc: {exc}", file=sys.stderr)
        return 2
    try:
        data, text, code = _run(q, ctx, sigma)
    except UnknownSuite as exc:
        print(f"segcalc: {exc}", file=sys.stderr)
        return 2
    except SegcalcError as exc:
        print(f"segcalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if q.format == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
