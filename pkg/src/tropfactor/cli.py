"""Command-line front end: geometry, decomposition, and max-plus factorization.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .descent import decompose_segment
from .geometry import (
    Direction,
    GeometryError,
    LatticeBody,
    LatticePoint,
    body_from_dict,
    body_to_dict,
    convex_hull,
    minkowski_diff,
    minkowski_sum,
)
from .maxplus import (
    MaxPlusError,
    MaxPlusFactorization,
    ZERO_FUNCTION,
    equivalent,
    eval_expr,
    factorize,
    factorize_difference,
    flatten,
    to_expression_string,
)
from .parsing import ExpressionSyntaxError, parse_expression
from .partition import unimodular_triangulation, partition_to_dict
from .pipeline import decompose, render_svg
from .signed import NormalForm, SignedAlgebraError, expand, support_check, verify_identity
from .svgout import render_partition

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2

_INPUT_ERRORS = (
    GeometryError,
    SignedAlgebraError,
    MaxPlusError,
    ExpressionSyntaxError,
    ValueError,
    json.JSONDecodeError,
    OSError,
)


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    if not source.lstrip().startswith(("{", "[")) and os.path.isfile(source):
        with open(source) as handle:
            return handle.read()
    return source


def _parse_point(text: str) -> LatticePoint:
    x, y = (int(part) for part in text.replace("(", "").replace(")", "").split(","))
    return LatticePoint(x, y)


def _read_body(source: str) -> LatticeBody:
    text = _read_text(source).strip()
    if text.startswith("{"):
        return body_from_dict(json.loads(text))
    return convex_hull([_parse_point(chunk) for chunk in text.split()])


def _emit(args, data: dict, text: str) -> None:
    print(json.dumps(data) if getattr(args, "json", False) else text)


def _body_text(body: LatticeBody) -> str:
    return f"{body.kind}: " + " ".join(f"{v.x},{v.y}" for v in body.vertices)


def _nf_text(nf: NormalForm) -> str:
    lines = [f"t = ({nf.t.x}, {nf.t.y})"]
    for atom, k in nf.atoms():
        lines.append(f"{k:+d} * {atom!r}")
    return "\n".join(lines)


def _seeded_directions(seed: int | None, count: int) -> list[Direction]:
    dirs = [Direction(1, 0), Direction(0, 1), Direction(-1, 0), Direction(0, -1),
            Direction(1, 1), Direction(1, -1), Direction(-1, 1), Direction(-1, -1)]
    rng = random.Random(0 if seed is None else seed)
    while len(dirs) < count:
        dx, dy = rng.randint(-50, 50), rng.randint(-50, 50)
        if (dx, dy) != (0, 0):
            dirs.append(Direction(dx, dy))
    return dirs[:count]


def _resolve_seed(args) -> int | None:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("TROPFACTOR_SEED")
    return int(env) if env else None


def _cmd_hull(args) -> int:
    body = _read_body(args.input)
    _emit(args, body_to_dict(body), _body_text(body))
    return EXIT_OK


def _cmd_sum(args) -> int:
    body = minkowski_sum(_read_body(args.a), _read_body(args.b))
    _emit(args, body_to_dict(body), _body_text(body))
    return EXIT_OK


def _cmd_diff(args) -> int:
    diff = minkowski_diff(_read_body(args.a), _read_body(args.b))
    if diff is None:
        _emit(args, {"exists": False}, "difference does not exist")
    else:
        _emit(args, {"exists": True, **body_to_dict(diff)}, _body_text(diff))
    return EXIT_OK


def _report_payload(report, args) -> dict:
    payload = {
        "body": body_to_dict(report.body),
        "normal_form": report.normal_form.to_dict(),
        "cells": report.cells,
        "dividing": report.dividing,
        "verified": report.verified,
    }
    if args.stats:
        payload["stats"] = report.stats()
    return payload


def _decompose_one(args, body: LatticeBody) -> tuple[int, dict, str]:
    report = decompose(body)
    ok = report.verified
    if args.verify == "support":
        dirs = _seeded_directions(_resolve_seed(args), 16)
        ok = ok and support_check(body, expand(report.normal_form), dirs)
    else:
        ok = ok and verify_identity(body, expand(report.normal_form))
    payload = _report_payload(report, args)
    payload["verified"] = ok
    text = _nf_text(report.normal_form)
    if args.stats:
        text += f"\ncells={report.cells} dividing={report.dividing} {report.stats()}"
    return (EXIT_OK if ok else EXIT_VERIFY), payload, text


def _cmd_decompose(args) -> int:
    if args.batch:
        status = EXIT_OK
        with open(args.batch) as handle:
            sources = [line.strip() for line in handle if line.strip()]
        for source in sources:
            code, payload, _ = _decompose_one(args, _read_body(source))
            print(json.dumps(payload))
            status = max(status, code)
        return status
    body = _read_body(args.input)
    code, payload, text = _decompose_one(args, body)
    if args.svg:
        with open(args.svg, "w") as handle:
            handle.write(render_svg(decompose(body)))
    _emit(args, payload, text)
    return code


def _cmd_decompose_segment(args) -> int:
    chunks = args.segment.split()
    if len(chunks) != 2:
        raise GeometryError("expected two points: 'x1,y1 x2,y2'")
    p1, p2 = _parse_point(chunks[0]), _parse_point(chunks[1])
    nf = decompose_segment(p1, p2)
    data = nf.to_dict()
    text = _nf_text(nf) if args.terms else json.dumps(data)
    _emit(args, data, text)
    return EXIT_OK


def _cmd_triangulate(args) -> int:
    part = unimodular_triangulation(_read_body(args.input))
    if args.svg:
        with open(args.svg, "w") as handle:
            handle.write(render_partition(part))
    text = f"{len(part.cells)} cells, {len(part.dividing_segs)} dividing segments"
    _emit(args, partition_to_dict(part), text)
    return EXIT_OK


def _function_of(expr_src: str):
    plus, minus = flatten(parse_expression(expr_src))
    return plus, minus


def _cmd_factorize(args) -> int:
    plus, minus = _function_of(args.expression)
    if minus.terms == ZERO_FUNCTION.terms:
        fact = factorize(plus)
    else:
        fact = factorize_difference(plus, minus)
    if args.probes:
        rng = random.Random(_resolve_seed(args) or 0)
        tree = parse_expression(args.expression)
        for _ in range(args.probes):
            x, y = rng.randint(-100, 100), rng.randint(-100, 100)
            if fact.evaluate(x, y) != eval_expr(tree, x, y):
                print("factorization mismatch", file=sys.stderr)
                return EXIT_VERIFY
    _emit(args, fact.to_dict(), to_expression_string(fact))
    return EXIT_OK


def _cmd_eval(args) -> int:
    tree = parse_expression(args.expression)
    p = _parse_point(args.at)
    print(eval_expr(tree, p.x, p.y))
    return EXIT_OK


def _cmd_verify(args) -> int:
    target = _read_body(args.target)
    nf = NormalForm.from_dict(json.loads(_read_text(args.nf)))
    if args.mode == "support":
        dirs = _seeded_directions(_resolve_seed(args), args.dirs)
        ok = support_check(target, expand(nf), dirs)
    else:
        ok = verify_identity(target, expand(nf))
    print("verified" if ok else "verification failed")
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_render(args) -> int:
    svg = render_svg(decompose(_read_body(args.input)))
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(svg)
    else:
        print(svg, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropfactor",
        description="Exact signed Minkowski decomposition and max-plus factorization. "
        "Body inputs are inline vertex lists ('0,0 2,0 2,2'), JSON "
        "('{\"vertices\": [[0,0],[2,0],[2,2]]}'), file paths, or '-' for stdin. "
        "Expressions admit max(...), +, -, positive scaling, and integer-coefficient "
        "linear terms; bare constants other than 0 are rejected.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized checks (default: TROPFACTOR_SEED)")
        return p

    p = add("hull", _cmd_hull, help="convex hull of a point set")
    p.add_argument("input")

    p = add("sum", _cmd_sum, help="Minkowski sum of two bodies")
    p.add_argument("a")
    p.add_argument("b")

    p = add("diff", _cmd_diff, help="Minkowski difference of two bodies, when it exists")
    p.add_argument("a")
    p.add_argument("b")

    p = add("decompose", _cmd_decompose, help="decompose a body into unit atoms")
    p.add_argument("input", nargs="?", default="")
    p.add_argument("--svg", metavar="PATH", help="write an SVG figure")
    p.add_argument("--verify", choices=("support", "full"), default="full")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--batch", metavar="FILE", help="file with one body per line")

    p = add("decompose-segment", _cmd_decompose_segment, help="decompose a lattice segment")
    p.add_argument("segment", help="'x1,y1 x2,y2'")
    p.add_argument("--terms", action="store_true", help="human-readable term list")

    p = add("triangulate", _cmd_triangulate, help="unimodular triangulation of a polygon")
    p.add_argument("input")
    p.add_argument("--svg", metavar="PATH")

    p = add("factorize", _cmd_factorize, help="factor a max-plus expression")
    p.add_argument("expression")
    p.add_argument("--probes", type=int, default=0, help="pointwise self-check count")

    p = add("eval", _cmd_eval, help="evaluate a max-plus expression")
    p.add_argument("expression")
    p.add_argument("--at", required=True, help="'x,y'")

    p = add("verify", _cmd_verify, help="check a claimed decomposition identity")
    p.add_argument("--target", required=True)
    p.add_argument("--nf", required=True, help="normal form JSON")
    p.add_argument("--mode", choices=("support", "full"), default="full")
    p.add_argument("--dirs", type=int, default=16, help="directions for support mode")

    p = add("render", _cmd_render, help="decompose and render an SVG figure")
    p.add_argument("input")
    p.add_argument("-o", "--output", metavar="PATH")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "decompose" and not args.batch and not args.input:
        print("error: decompose needs a body or --batch", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
