"""Command-line front end.

Text output is one ``KEY value`` record per line in a fixed order; ``--json``
emits the same records as a single JSON object.  Exit codes: 0 success,
1 mathematical refusal, 2 usage or precondition error, 3 internal
verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import census as cen
from .conic import ConicTag, classify, intersect, parse_conic, zero_set
from .diag import decide, oracle_triangle
from .errors import DomainError, GeometryError, NoneExist
from .gf import field_create
from .pencil import ShapeTag, build_pencil, nested_position, shape, verify_partition
from .pg2 import format_matrix

EXIT_OK, EXIT_REFUSED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class Records:
    def __init__(self) -> None:
        self.items: list[tuple[str, Any]] = []

    def put(self, key: str, value: Any) -> None:
        self.items.append((key, value))

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(dict(self.items), indent=2)
        lines = []
        for key, value in self.items:
            if isinstance(value, list):
                lines.extend(f"{key} {_text(v)}" for v in value)
            else:
                lines.append(f"{key} {_text(value)}")
        return "\n".join(lines)


def _text(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, dict):
        return " ".join(f"{k}={_text(v)}" for k, v in value.items())
    if isinstance(value, (tuple, list)):
        return " ".join(_text(v) for v in value)
    return str(value)


def _pts(points) -> list[str]:
    return [str(p) for p in points]


def cmd_field(args, out: Records) -> int:
    ctx = args.ctx
    out.put("Q", ctx.q)
    out.put("P", ctx.p)
    out.put("N", ctx.n)
    out.put("MODULUS", ",".join(map(str, ctx.modulus)))
    out.put("ALPHA", ctx.alpha)
    out.put("SQUARES", [x for x in range(1, ctx.q) if ctx.is_square(x)])
    return EXIT_OK


def _put_class(out: Records, cls) -> None:
    out.put("CLASS", str(cls.tag))
    if cls.tag is ConicTag.SINGLE_POINT:
        out.put("POINT", str(cls.point))
    elif cls.tag is ConicTag.REPEATED_LINE:
        out.put("LINE", str(cls.line))
    elif cls.tag is ConicTag.LINE_PAIR:
        out.put("VERTEX", str(cls.point))
        out.put("LINES", [str(ln) for ln in cls.lines])


def cmd_classify(args, out: Records) -> int:
    ctx = args.ctx
    c = parse_conic(ctx, args.conic)
    out.put("CONIC", str(c))
    _put_class(out, classify(ctx, c, check=True))
    out.put("ZEROS", len(zero_set(ctx, c)))
    return EXIT_OK


def cmd_intersect(args, out: Records) -> int:
    ctx = args.ctx
    pts = intersect(ctx, parse_conic(ctx, args.c1), parse_conic(ctx, args.c2))
    out.put("COUNT", len(pts))
    out.put("POINT", _pts(pts))
    return EXIT_OK


def cmd_pencil(args, out: Records) -> int:
    ctx = args.ctx
    pencil = build_pencil(ctx, parse_conic(ctx, args.c1), parse_conic(ctx, args.c2))
    out.put("BASE_POINTS", len(pencil.base_points))
    out.put("BASE_POINT", _pts(pencil.base_points))
    out.put("MEMBER", [
        f"{i} {cls.tag} {m} {len(zero_set(ctx, m))}"
        for i, (m, cls) in enumerate(zip(pencil.members, pencil.member_classes))
    ])
    if pencil.all_degenerate:
        out.put("SHAPE", str(ShapeTag.ALL_DEGENERATE))
    else:
        out.put("SHAPE", str(shape(pencil)))
    if not pencil.base_points:
        out.put("PARTITION", verify_partition(pencil))
    return EXIT_OK


def cmd_diagonalize(args, out: Records) -> int:
    ctx = args.ctx
    c1, c2 = parse_conic(ctx, args.c1), parse_conic(ctx, args.c2)
    outcome = decide(ctx, c1, c2)
    out.put("DECISION", "YES" if outcome.decision else "NO")
    out.put("SHAPE", str(outcome.shape))
    if outcome.decision:
        out.put("WITNESS", format_matrix(outcome.witness.m))
        out.put("DIAG1", ",".join(map(str, outcome.images[0].coeffs[:3])))
        out.put("DIAG2", ",".join(map(str, outcome.images[1].coeffs[:3])))
    else:
        out.put("REFUSAL", f"NOT_DIAGONALIZABLE {outcome.refusal}")
    if args.oracle:
        verdict = oracle_triangle(ctx, c1, c2)
        agree = verdict.decision == outcome.decision
        out.put("ORACLE", "YES" if verdict.decision else "NO")
        out.put("ORACLE_AGREES", agree)
        if not agree:
            return EXIT_INTERNAL
    return EXIT_OK if outcome.decision else EXIT_REFUSED


def cmd_nested(args, out: Records) -> int:
    ctx = args.ctx
    report = nested_position(ctx, parse_conic(ctx, args.c1), parse_conic(ctx, args.c2))
    out.put("DIRECTION1", report.direction1.value)
    out.put("DIRECTION2", report.direction2.value)
    out.put("NESTED", report.nested)
    out.put("COMMON_TANGENTS", report.common_tangents)
    return EXIT_OK


def cmd_census(args, out: Records) -> int:
    ctx = args.ctx
    base = parse_conic(ctx, args.base) if args.base else None
    report = cen.run_census(ctx, base, bound=args.bound)
    data = report.to_dict()
    # paired values read "enumerated closed-form"; nested reads "pencils all-nested"
    for key in ("q", "base", "total_conics"):
        out.put(key.upper(), data[key])
    out.put("PROPER_CONICS", tuple(data["proper_conics"]))
    for prefix, section in (("THROUGH", "through_k_points"), ("N", "N"),
                            ("FORM", "pencil_forms"), ("RECOUNT", "pencil_forms_recount"),
                            ("NESTED", "nested")):
        for k, v in data[section].items():
            out.put(f"{prefix}_{k}", tuple(v) if isinstance(v, list) else v)
    out.put("DISCREPANCY", data["discrepancies"])
    out.put("STATUS", "OK" if report.ok else "FAIL")
    return EXIT_OK if report.ok else EXIT_INTERNAL


def cmd_find(args, out: Records) -> int:
    ctx = args.ctx
    try:
        found = cen.find_instances(ctx, ShapeTag(args.shape), args.count, bound=args.bound)
    except NoneExist as exc:
        out.put("FOUND", 0)
        out.put("REFUSAL", f"NONE_EXIST {exc}")
        return EXIT_REFUSED
    out.put("FOUND", len(found))
    out.put("PAIR", [f"{a} {b}" for a, b in found])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, required=True, help="field order, an odd prime power")
    common.add_argument("--json", action="store_true", help="emit one JSON document")

    parser = argparse.ArgumentParser(prog="pgconics", description="Conics and pencils in PG(2,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("field", parents=[common], help="describe GF(q)").set_defaults(func=cmd_field)

    p = sub.add_parser("classify", parents=[common], help="classify one conic")
    p.add_argument("--conic", required=True, metavar="a,b,c,d,e,f")
    p.set_defaults(func=cmd_classify)

    for name, func, helptext in (
        ("intersect", cmd_intersect, "common points of two conics"),
        ("pencil", cmd_pencil, "members and shape of a pencil"),
        ("diagonalize", cmd_diagonalize, "simultaneous diagonalization"),
        ("nested", cmd_nested, "nested position of two proper conics"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--c1", required=True, metavar="a,b,c,d,e,f")
        p.add_argument("--c2", required=True, metavar="a,b,c,d,e,f")
        if name == "diagonalize":
            p.add_argument("--oracle", action="store_true",
                           help="cross-check with the exhaustive triangle search")
        p.set_defaults(func=func)

    p = sub.add_parser("census", parents=[common], help="verify the counting formulas")
    p.add_argument("--base", metavar="a,b,c,d,e,f", help="fixed proper conic (default: first)")
    p.add_argument("--bound", type=int, default=cen.DEFAULT_BOUND)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("find", parents=[common], help="first pairs with a given pencil shape")
    p.add_argument("--shape", required=True, choices=[t.value for t in ShapeTag])
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--bound", type=int, default=cen.DEFAULT_BOUND)
    p.set_defaults(func=cmd_find)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Records()
    try:
        args.ctx = field_create(args.q)
        code = args.func(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GeometryError, AssertionError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(out.render(args.json))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
