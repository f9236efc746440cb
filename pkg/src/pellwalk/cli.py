"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 1 internal verification failure.
Big integers are written as decimal strings in JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from pellwalk.cycle import CycleResult, act, iterate, solve, validate_d, verify_cycle
from pellwalk.errors import InternalStateError, InvalidD
from pellwalk.forms import Form, Run, is_square
from pellwalk.stern_brocot import convergents

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _s(n: int) -> str:
    return str(n)


def _format_trace(res: CycleResult) -> str:
    assert res.trace is not None
    parts: list[str] = []
    for form, run in res.trace:
        parts.append(str(form))
        parts.append(str(run))
    parts.append(str(Form(1, 0, -res.D)))
    return " ".join(parts)


def _emit(args: argparse.Namespace, doc, text_lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(doc))
    else:
        for line in text_lines:
            print(line)


def _solve_verified(D: int, trace: bool = False) -> CycleResult:
    res = solve(D, trace=trace)
    report = verify_cycle(res)
    if not report.ok:
        raise InternalStateError(str(report))
    return res


def cmd_solve(args: argparse.Namespace) -> int:
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    res = _solve_verified(args.D, trace=args.trace)
    sols = iterate(res, args.count)
    neg = res.negative
    doc = {
        "d": _s(res.D),
        "word": str(res.word),
        "n": [_s(e) for e in res.N],
        "x": _s(res.fundamental.x),
        "y": _s(res.fundamental.y),
        "solutions": [[_s(s.x), _s(s.y)] for s in sols],
        "negative": None if neg is None else {"u1": _s(neg.u1), "v1": _s(neg.v1)},
    }
    lines = [
        f"D: {res.D}",
        f"word: {res.word}",
        "N: " + " ".join(_s(e) for e in res.N),
        f"fundamental: {res.fundamental.x} {res.fundamental.y}",
        "solutions:",
        *(f"  {s.x} {s.y}" for s in sols),
    ]
    if args.negative:
        if neg is None:
            lines.append("negative: none")
        else:
            lines.append(f"negative: u1={neg.u1} v1={neg.v1}")
            lines.append("M: " + " ".join(_s(e) for e in neg.M))
    if args.trace:
        doc["trace"] = _format_trace(res)
        lines.append(f"trace: {doc['trace']}")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_word(args: argparse.Namespace) -> int:
    res = _solve_verified(args.D)
    _emit(args, {"d": _s(args.D), "word": str(res.word)}, [str(res.word)])
    return EXIT_OK


def cmd_approx(args: argparse.Namespace) -> int:
    validate_d(args.D)
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    fracs = [str(f) for f in convergents(args.D, args.count)]
    _emit(args, fracs, fracs)
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    lo, hi = args.D_min, args.D_max
    if lo < 2 or lo > hi:
        raise UsageError(f"need 2 <= D_min <= D_max, got {lo} {hi}")
    rows = []
    for D in range(lo, hi + 1):
        if is_square(D):
            continue
        res = _solve_verified(D)
        rows.append(
            {
                "d": _s(D),
                "x": _s(res.fundamental.x),
                "y": _s(res.fundamental.y),
                "length": res.word.length,
                "negative": res.negative is not None,
            }
        )
    lines = [
        f"{r['d']} {r['x']} {r['y']} {r['length']} {'yes' if r['negative'] else 'no'}"
        for r in rows
    ]
    _emit(args, rows, lines)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    D, x, y = args.D, args.x, args.y
    res = _solve_verified(D)
    n = x * x - D * y * y
    nx, ny = act(res.N, (x, y))
    doc = {"d": _s(D), "x": _s(x), "y": _s(y), "n": _s(n), "next": [_s(nx), _s(ny)]}
    _emit(args, doc, [f"n: {n}", f"next: {nx} {ny}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON document")

    parser = argparse.ArgumentParser(
        prog="pellwalk",
        description="Solve x^2 - Dy^2 = 1 by walking balanced quadratic forms.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="fundamental solution and iterates")
    p.add_argument("D", type=int)
    p.add_argument("--count", type=int, default=1, help="number of iterated solutions")
    p.add_argument("--negative", action="store_true", help="report x^2 - Dy^2 = -1")
    p.add_argument("--trace", action="store_true", help="print the run-level form sequence")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("word", parents=[common], help="cycle word in L/R run notation")
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("approx", parents=[common], help="Stern-Brocot convergents to sqrt(D)")
    p.add_argument("D", type=int)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("table", parents=[common], help="fundamental solutions for a range of D")
    p.add_argument("D_min", type=int)
    p.add_argument("D_max", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="evaluate x^2 - Dy^2 and map (x, y) by N")
    p.add_argument("D", type=int)
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "json"):
        args.json = False
    try:
        return args.func(args)
    except InvalidD as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalStateError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
