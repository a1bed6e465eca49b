"""Command-line front end.

    weylsum integrate --k 1 --n 3 --expr "c1(S)^2"
    weylsum euler-char --family B --rank 2 --h ""
    weylsum grassmann --k 2 --n 4 --m 0,2 --json

Exit status is 0 on success, 1 when the engine rejects the input (the error
and its payload are reported), and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import WeylsumError
from .exprparse import compile as compile_expr, parse
from .grassmann import char_number, grassmannian
from .localize import (
    ORIENTATIONS,
    SpaceSpec,
    basic_invariants,
    equivariant_integrate,
    euler_factors,
    euler_characteristic,
    euler_class,
    integrate,
    make_class,
    make_space,
    poincare_polynomial,
    verify_relation,
)
from .polyalg import Polynomial, format_rational
from .rootsys import build_root_system, read_subsystem_file, subsystem

COMMANDS = (
    "fixed-points",
    "euler-class",
    "integrate",
    "eq-integrate",
    "euler-char",
    "poincare",
    "verify-relations",
    "grassmann",
)


class UsageError(Exception):
    pass


def _int_list(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylsum", description="Exact localization sums on G/H.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--family", choices=("A", "B", "C", "D"))
    parser.add_argument("--rank", type=int, help="number of coordinates (family A: n for U(n))")
    parser.add_argument("--h", dest="h", help='1-based simple-root indices of H, e.g. "1,3"; "" means H = T')
    parser.add_argument("--h-file", help="expert mode: file of 0-based positive-root indices")
    parser.add_argument("--k", type=int, help="Grassmannian G(k, n)")
    parser.add_argument("--n", type=int, help="Grassmannian G(k, n)")
    parser.add_argument("--expr", help="class expression, e.g. 'c1(S)^2'")
    parser.add_argument("--m", help="grassmann: exponents m_1,m_2,... of c_r")
    parser.add_argument("--bundle", choices=("S", "Q"), default="S")
    parser.add_argument("--orientation", choices=ORIENTATIONS, default="complex")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--json", action="store_true")
    return parser


def resolve_space(args) -> SpaceSpec:
    if args.k is not None or args.n is not None:
        if args.k is None or args.n is None:
            raise UsageError("--k and --n go together")
        if args.family or args.rank is not None or args.h is not None or args.h_file:
            raise UsageError("--k/--n cannot be combined with --family/--rank/--h")
        if not 1 <= args.k < args.n:
            raise UsageError(f"need 1 <= k < n, got k={args.k}, n={args.n}")
        return grassmannian(args.k, args.n, args.orientation).space
    if args.family is None or args.rank is None:
        raise UsageError("give --family and --rank (or --k and --n)")
    if (args.h is None) == (args.h_file is None):
        raise UsageError("give exactly one of --h and --h-file")
    g = build_root_system(args.family, args.rank)
    if args.h_file:
        h = read_subsystem_file(g, args.h_file)
    else:
        h = subsystem(g, _int_list(args.h, "--h"))
    return make_space(g, h, args.orientation)


def _need_expr(args) -> str:
    if args.expr is None:
        raise UsageError(f"{args.command} needs --expr")
    return args.expr


def _rational(value) -> dict:
    return {"kind": "rational", "value": format_rational(value)}


def _polynomial(p: Polynomial) -> dict:
    return {"kind": "polynomial", "value": p.to_json(), "text": str(p)}


def _factored_euler(space: SpaceSpec, w) -> str:
    scale, forms = euler_factors(space, w)
    body = "*".join(f"({f})" for f in forms) or "1"
    if scale == 1:
        return body
    if scale == -1:
        return "-" + body
    return f"{scale}*{body}"


def _series_text(coeffs: list[int]) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not mono:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) or "0"


def run_command(args, space: SpaceSpec) -> dict:
    cmd = args.command
    if cmd == "fixed-points":
        rows = []
        for w in space.cosets:
            rows.append(
                {
                    "index": w.index,
                    "element": list(w.element.one_line()),
                    "length": w.length,
                    "blocks": [list(b) for b in w.blocks] if w.blocks is not None else None,
                    "euler": _factored_euler(space, w),
                }
            )
        return {"kind": "table", "value": rows}
    if cmd == "euler-class":
        return _polynomial(euler_class(space))
    if cmd in ("integrate", "eq-integrate"):
        poly = compile_expr(parse(_need_expr(args)), space)
        cls = make_class(space, poly)
        if cmd == "integrate":
            return _rational(integrate(cls, args.workers))
        return _polynomial(equivariant_integrate(cls, args.workers))
    if cmd == "euler-char":
        return _rational(euler_characteristic(space))
    if cmd == "poincare":
        coeffs = poincare_polynomial(space)
        value = [{"exponents": [i], "coeff": str(c)} for i, c in enumerate(coeffs) if c]
        return {"kind": "polynomial", "value": value, "text": _series_text(coeffs)}
    if cmd == "verify-relations":
        if args.expr is not None:
            checks = [(args.expr, compile_expr(parse(args.expr), space))]
        else:
            checks = basic_invariants(space.g, "y")
        rows = [{"relation": name, "holds": verify_relation(space, b)} for name, b in checks]
        return {"kind": "table", "value": rows}
    raise UsageError(f"unknown command {cmd!r}")


def _grassmann(args) -> tuple[SpaceSpec, dict]:
    if args.k is None or args.n is None or args.m is None:
        raise UsageError("grassmann needs --k, --n and --m")
    if not 1 <= args.k < args.n:
        raise UsageError(f"need 1 <= k < n, got k={args.k}, n={args.n}")
    m = _int_list(args.m, "--m")
    spec = grassmannian(args.k, args.n, args.orientation)
    return spec.space, _rational(char_number(spec, m, args.bundle, args.workers))


def render_text(command: str, result: dict) -> str:
    kind = result["kind"]
    if kind == "rational":
        return result["value"]
    if kind == "polynomial":
        return result["text"]
    rows = result["value"]
    if command == "fixed-points":
        lines = []
        for r in rows:
            elem = "[" + " ".join(str(x) for x in r["element"]) + "]"
            extra = ""
            if r["blocks"] is not None:
                extra = "  " + " | ".join(",".join(str(x) for x in b) for b in r["blocks"])
            lines.append(f"{r['index']}  {elem}  length {r['length']}{extra}  euler {r['euler']}")
        return "\n".join(lines)
    return "\n".join(f"{r['relation']}: {'ok' if r['holds'] else 'FAILED'}" for r in rows)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    try:
        if args.command == "grassmann":
            space, result = _grassmann(args)
        else:
            space = resolve_space(args)
            result = run_command(args, space)
    except UsageError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        payload = exc.payload() if isinstance(exc, WeylsumError) else {}
        error = {"type": type(exc).__name__, "message": str(exc), "payload": payload}
        if args.json:
            print(json.dumps({"command": args.command, "error": error}, sort_keys=True))
        else:
            print(f"error: {error['type']}: {error['message']}", file=sys.stderr)
            if error["payload"]:
                print(f"payload: {json.dumps(error['payload'], sort_keys=True)}", file=sys.stderr)
        return 1

    if args.json:
        out = {"space": space.describe(), "command": args.command, "result": result}
        print(json.dumps(out, sort_keys=True))
    else:
        print(render_text(args.command, result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
