"""``gridctl``: command-line access to grids, automata, geometry and streams.

Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .automata import convolve, export_dot
from .checkers import compile_addition_checker, compile_comparison_checker, compile_mulconst_checker
from .digits import LaurentDigits, format_digits, parse_digits
from .errors import GridError
from .geometry import (
    Triangle,
    convex_polygon_contains,
    equilateral_third,
    format_point,
    parse_point,
    rect_same_area,
    render_svg,
    rotate,
    triangle_contains,
    compile_region_dfa,
)
from .grids import SHIPPED_GRIDS, const_digits, grid_by_name, load_grid, validate_grid
from .mulconst import mul_by_grid_constant
from .normalize import normalize
from .omega import OmegaStream, omega_compare, omega_sign, omega_spec
from .oracle import approx_value
from .sign import compare, compile_sign_dfa, sign_of


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _grid(args):
    if getattr(args, "grid_file", None):
        return load_grid(args.grid_file)
    if not args.grid:
        raise UsageError("--grid or --grid-file is required")
    return grid_by_name(args.grid)


def _digits(g, text: str) -> LaurentDigits:
    """Parse and bring into normal form; value is unchanged."""
    return normalize(g, parse_digits(text))


def _fmt(p: LaurentDigits, args) -> str:
    return format_digits(p, "pretty" if getattr(args, "pretty", False) else "compact")


def _constant(g, text: str) -> LaurentDigits:
    t = text.strip()
    if t.lstrip("+-").isdigit():
        return const_digits(g, int(t))
    if t.lower() in ("one", "inv_b", "c", "half"):
        return const_digits(g, t)
    return _digits(g, t)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# --- handlers ------------------------------------------------------------------

def cmd_grids(args, out):
    if args.action == "list":
        for name in SHIPPED_GRIDS:
            g = grid_by_name(name)
            print(f"{g.name}\th={g.h}\tD={g.digit_bound}\tinput_bound={g.input_bound}"
                  f"\twindow={','.join(map(str, g.window_bounds))}\tminpoly={','.join(map(str, g.minpoly))}", file=out)
        return 0
    names = [args.grid] if args.grid or args.grid_file else list(SHIPPED_GRIDS)
    status = 0
    for name in names:
        g = load_grid(args.grid_file) if args.grid_file else grid_by_name(name)
        rep = validate_grid(g, fuzz=args.fuzz, seed=args.seed)
        for line in rep.lines():
            print(f"{g.name}\t{line}", file=out)
        status |= 0 if rep.ok else 1
    return status


def cmd_normalize(args, out):
    g = _grid(args)
    print(_fmt(_digits(g, args.digits), args), file=out)
    return 0


def cmd_sign(args, out):
    g = _grid(args)
    print(sign_of(g, _digits(g, args.digits)), file=out)
    return 0


def cmd_cmp(args, out):
    g = _grid(args)
    print(compare(g, _digits(g, args.x), _digits(g, args.y)), file=out)
    return 0


def cmd_add(args, out):
    g = _grid(args)
    print(_fmt(normalize(g, _digits(g, args.x) + _digits(g, args.y)), args), file=out)
    return 0


def cmd_mul(args, out):
    g = _grid(args)
    print(_fmt(mul_by_grid_constant(g, _constant(g, args.by), _digits(g, args.x)), args), file=out)
    return 0


def _relation_dfa(g, args):
    if args.relation == "add":
        return compile_addition_checker(g, state_cap=args.max_states)
    if args.relation == "mulconst":
        num = parse_digits(args.num)
        den = parse_digits(args.den)
        return compile_mulconst_checker(g, num, den, state_cap=args.max_states)
    if args.relation == "sign":
        return compile_sign_dfa(g, state_cap=args.max_states)
    return compile_comparison_checker(g, args.relation, state_cap=args.max_states)


def cmd_automaton(args, out):
    g = _grid(args)
    A = _relation_dfa(g, args)
    if args.words:
        vecs = [_digits(g, w) for w in args.words]
        if len(vecs) != A.tracks:
            raise UsageError(f"relation {args.relation} needs {A.tracks} operands, got {len(vecs)}")
        print(A.run(convolve(vecs).letters()), file=out)
    if args.dot:
        text = export_dot(A, cap=args.max_states)
        _write(args.dot, text)
        print(f"wrote {args.dot} ({text.splitlines()[0].split(': ', 1)[1]})", file=out)
    if not args.words and not args.dot:
        print(f"{A.name}\ttracks={A.tracks}\tletters={len(A.alphabet)}", file=out)
    return 0


def cmd_geo(args, out):
    if args.action == "rect-area":
        w, h = (Fraction(x) for x in args.sides)
        print("yes" if rect_same_area(args.p, (w, h), tuple(args.area)) else "no", file=out)
        return 0
    g = _grid(args)
    pts = [parse_point(g, p) for p in args.points]
    svg_polys, svg_pts = [], []
    if args.action == "rotate":
        _need(pts, 1, "rotate")
        r = rotate(g, pts[0], args.angle)
        print(format_point(r), file=out)
        svg_pts = [pts[0], r]
    elif args.action == "equilateral":
        _need(pts, 2, "equilateral")
        c = equilateral_third(g, pts[0], pts[1], args.side)
        print(format_point(c), file=out)
        svg_polys = [[pts[0], pts[1], c]]
    elif args.action == "contains":
        if len(pts) < 4:
            raise UsageError("contains needs at least three vertices and a query point")
        *poly, q = pts
        if args.automaton:
            if len(poly) != 3:
                raise UsageError("--automaton works with triangles only")
            inside = compile_region_dfa(g, Triangle(*poly)).accepts(convolve([q.x, q.y]).letters())
        elif len(poly) == 3:
            inside = triangle_contains(g, Triangle(*poly), q)
        else:
            inside = convex_polygon_contains(g, poly, q)
        print("inside" if inside else "outside", file=out)
        svg_polys, svg_pts = [poly], [q]
    if args.svg:
        _write(args.svg, render_svg(g, svg_polys, svg_pts))
    return 0


def _need(pts, n, what):
    if len(pts) != n:
        raise UsageError(f"{what} needs exactly {n} point(s)")


def cmd_omega(args, out):
    spec = omega_spec(args.b)
    streams = [OmegaStream.of(parse_digits(s), args.depth) for s in args.streams]
    if args.action == "sign":
        if len(streams) != 1:
            raise UsageError("omega sign takes one stream")
        print(omega_sign(spec, streams[0], exhaust=args.exhaust), file=out)
    else:
        if len(streams) != 2:
            raise UsageError("omega cmp takes two streams")
        print(omega_compare(spec, streams[0], streams[1], exhaust=args.exhaust), file=out)
    return 0


def cmd_oracle(args, out):
    g = _grid(args)
    lo, hi = approx_value(g, parse_digits(args.digits), Fraction(args.prec))
    mid = (lo + hi) / 2
    digits = max(1, len(str(Fraction(args.prec).denominator)))
    print(f"{float(mid):.{min(digits, 17)}g}\t[{lo}, {hi}]", file=out)
    return 0


def cmd_selftest(args, out):
    from .acceptance import run_all

    numbers = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_all(numbers)
    for r in results:
        print(r.line(), file=out)
    return 0 if all(r.ok for r in results) else 1


# --- parser ---------------------------------------------------------------------

def _add_grid(p):
    p.add_argument("--grid", help="grid name (d<b>, sqrt2half, sqrt3half, sqrtb2m1half:<b>, cbrt7, cbrt65half)")
    p.add_argument("--grid-file", help="grid description as JSON")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gridctl", description="Exact arithmetic and automata over algebraic digit grids.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("grids", help="list or validate grids")
    s.add_argument("action", choices=("list", "validate"))
    _add_grid(s)
    s.add_argument("--fuzz", type=int, default=2000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_grids)

    s = sub.add_parser("normalize", help="reduce digits into the digit bound")
    _add_grid(s)
    s.add_argument("digits")
    s.add_argument("--pretty", action="store_true")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("sign", help="sign of a digit vector")
    _add_grid(s)
    s.add_argument("digits")
    s.set_defaults(func=cmd_sign)

    for name, func, helptext in (("cmp", cmd_cmp, "compare two values"), ("add", cmd_add, "sum in normal form")):
        s = sub.add_parser(name, help=helptext)
        _add_grid(s)
        s.add_argument("x")
        s.add_argument("y")
        s.add_argument("--pretty", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("mul", help="multiply by a grid constant")
    _add_grid(s)
    s.add_argument("--by", required=True, help="integer, one, inv_b, c, half or digits")
    s.add_argument("x")
    s.add_argument("--pretty", action="store_true")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("automaton", help="run or export a relation checker")
    _add_grid(s)
    s.add_argument("--relation", choices=("add", "eq", "lt", "le", "gt", "ge", "mulconst", "sign"), default="add")
    s.add_argument("--num", default="{0:1}", help="numerator digits for mulconst")
    s.add_argument("--den", default="{0:1}", help="denominator digits for mulconst")
    s.add_argument("--dot", help="write Graphviz source to this path")
    s.add_argument("--max-states", type=int, default=100_000)
    s.add_argument("words", nargs="*", help="operands to convolve and run")
    s.set_defaults(func=cmd_automaton)

    geo = sub.add_parser("geo", help="geometry on grid points").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for action, helptext in (
        ("rotate", "rotate a point about the origin"),
        ("contains", "closed containment in a triangle or convex polygon"),
        ("equilateral", "third vertex of an equilateral triangle"),
        ("rect-area", "same-area test for a rectangle with dyadic sides"),
    ):
        s = geo.add_parser(action, help=helptext)
        s.set_defaults(func=cmd_geo)
        if action == "rect-area":
            s.add_argument("--p", type=int, default=2, help="prime base")
            s.add_argument("--sides", nargs=2, required=True, help="side lengths (rationals)")
            s.add_argument("--area", nargs=2, type=int, required=True, metavar=("L", "K"), help="area L * p**K")
            s.set_defaults(points=[])
            continue
        _add_grid(s)
        s.add_argument("--svg", help="write a drawing to this path")
        if action == "rotate":
            s.add_argument("--angle", type=int, required=True)
        elif action == "equilateral":
            s.add_argument("--side", choices=("plus", "minus"), default="plus")
        else:
            s.add_argument("--automaton", action="store_true", help="decide with the region automaton (triangles)")
        s.add_argument("points", nargs="*", help="points as '(x,y)'")

    s = sub.add_parser("omega", help="sign detector on truncated digit streams")
    s.add_argument("action", choices=("sign", "cmp"))
    s.add_argument("--b", type=int, default=2)
    s.add_argument("--depth", type=int, default=None, help="lowest materialized exponent")
    s.add_argument("--exhaust", action="store_true", help="read zeros past the depth until decided")
    s.add_argument("streams", nargs="+")
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("oracle", help="exact value queries")
    s.add_argument("action", choices=("value",))
    _add_grid(s)
    s.add_argument("--prec", default="1e-12")
    s.add_argument("digits")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("selftest", help="run the acceptance checks")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (GridError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
