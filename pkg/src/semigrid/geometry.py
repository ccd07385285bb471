"""Points and shapes with grid coordinates.

All predicates reduce to the sign of an affine functional whose multipliers
are fixed grid elements, so each test is a constant multiplication plus one
comparison.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .automata import SyncDFA, determinize, dfa_product, project_track
from .checkers import constant_track_checker, linear_checker
from .digits import LaurentDigits, format_digits, parse_digits
from .errors import (
    CoincidentPoints,
    DegenerateTriangle,
    NotConvex,
    NotDyadicRational,
    UnsupportedConstant,
    UnsupportedRotation,
)
from .grids import const_digits
from .mulconst import mul_by_grid_constant
from .normalize import normalize
from .oracle import approx_value
from .sign import Sign, compare, equal

__all__ = [
    "Point",
    "Triangle",
    "AxisRect",
    "point",
    "parse_point",
    "format_point",
    "points_equal",
    "translate",
    "rotate",
    "side_sign",
    "triangle_contains",
    "convex_polygon_contains",
    "equilateral_third",
    "compile_region_dfa",
    "region_side_dfa",
    "interleave",
    "deinterleave",
    "rect_same_area",
    "render_svg",
]


@dataclass(frozen=True)
class Point:
    x: LaurentDigits
    y: LaurentDigits


@dataclass(frozen=True)
class Triangle:
    a: Point
    b: Point
    c: Point

    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.a, self.b, self.c)

    def is_degenerate(self, g) -> bool:
        return side_sign(g, self.a, self.b, self.c) == Sign.ZERO


@dataclass(frozen=True)
class AxisRect:
    lower_left: Point
    upper_right: Point

    def check(self, g) -> bool:
        return (compare(g, self.lower_left.x, self.upper_right.x) < 0
                and compare(g, self.lower_left.y, self.upper_right.y) < 0)


def _coord(g, v) -> LaurentDigits:
    if isinstance(v, LaurentDigits):
        return normalize(g, v)
    if isinstance(v, int):
        return const_digits(g, v)
    if isinstance(v, str):
        v = v.strip()
        if re.fullmatch(r"[+-]?\d+", v):
            return const_digits(g, int(v))
        return normalize(g, parse_digits(v))
    raise TypeError(f"cannot make a coordinate from {v!r}")


def point(g, x, y) -> Point:
    """Point from ints, digit strings or digit vectors (normalized)."""
    return Point(_coord(g, x), _coord(g, y))


def parse_point(g, text: str) -> Point:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"expected '(x,y)', got {text!r}")
    body = s[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch in "{[":
            depth += 1
        elif ch in "}]":
            depth -= 1
        elif ch == "," and depth == 0:
            return point(g, body[:i], body[i + 1:])
    raise ValueError(f"expected '(x,y)', got {text!r}")


def format_point(p: Point) -> str:
    return f"({format_digits(p.x)}, {format_digits(p.y)})"


def points_equal(g, p: Point, q: Point) -> bool:
    return equal(g, p.x, q.x) and equal(g, p.y, q.y)


def translate(g, p: Point, v: Point) -> Point:
    return Point(normalize(g, p.x + v.x), normalize(g, p.y + v.y))


# --- rotations --------------------------------------------------------------

def _half(g) -> LaurentDigits:
    try:
        return const_digits(g, "half")
    except UnsupportedConstant:
        raise UnsupportedRotation(f"grid {g.name} has no 1/2") from None


def _root_half(g, radicand: int) -> LaurentDigits:
    """Digits of sqrt(radicand)/2."""
    if g.p2 is None or g.radicand != radicand or g.root_degree != 2:
        raise UnsupportedRotation(f"grid {g.name} has no sqrt({radicand})")
    return mul_by_grid_constant(g, const_digits(g, "c"), _half(g))


def _rotate_by(g, p: Point, cos: LaurentDigits, sin: LaurentDigits) -> Point:
    cx = mul_by_grid_constant(g, cos, p.x)
    sx = mul_by_grid_constant(g, sin, p.x)
    cy = mul_by_grid_constant(g, cos, p.y)
    sy = mul_by_grid_constant(g, sin, p.y)
    return Point(normalize(g, cx - sy), normalize(g, sx + cy))


def rotate(g, p: Point, angle: int) -> Point:
    """Counter-clockwise rotation about the origin by a multiple of 30 or 45
    degrees."""
    angle %= 360
    quarter, rest = divmod(angle, 90)
    for _ in range(quarter):
        p = Point(-p.y, p.x)
    if rest == 0:
        return p
    if rest in (30, 60):
        r3 = _root_half(g, 3)
        half = _half(g)
        cos, sin = (r3, half) if rest == 30 else (half, r3)
        return _rotate_by(g, p, cos, sin)
    if rest == 45:
        r2 = _root_half(g, 2)
        return _rotate_by(g, p, r2, r2)
    raise UnsupportedRotation(f"angle {angle} is not a multiple of 30 or 45 degrees")


# --- orientation and containment ---------------------------------------------

def _side_parts(g, a: Point, b: Point):
    """Multipliers and constant of f(v, w) = w*gw - v*gv + K for line ab."""
    gw = normalize(g, b.x - a.x)
    gv = normalize(g, b.y - a.y)
    K = normalize(g, mul_by_grid_constant(g, gv, a.x) - mul_by_grid_constant(g, gw, a.y))
    return gw, gv, K


def side_sign(g, a: Point, b: Point, q: Point) -> Sign:
    """Sign of (w-y)(x'-x) - (v-x)(y'-y) at q=(v,w) for a=(x,y), b=(x',y');
    positive when q lies to the left of the directed line ab."""
    gw = normalize(g, b.x - a.x)
    gv = normalize(g, b.y - a.y)
    t1 = mul_by_grid_constant(g, gw, normalize(g, q.y - a.y))
    t2 = mul_by_grid_constant(g, gv, normalize(g, q.x - a.x))
    return Sign(int(compare(g, t1, t2)))


def _oriented_sides(g, T: Triangle) -> list[tuple[Point, Point, Sign]]:
    a, b, c = T.vertices()
    out = []
    for p, q, opp in ((a, b, c), (b, c, a), (c, a, b)):
        s = side_sign(g, p, q, opp)
        if s == Sign.ZERO:
            raise DegenerateTriangle("triangle vertices are collinear")
        out.append((p, q, s))
    return out


def triangle_contains(g, T: Triangle, q: Point) -> bool:
    """Closed containment (boundary included)."""
    for p, r, s in _oriented_sides(g, T):
        if side_sign(g, p, r, q) * s < 0:
            return False
    return True


def convex_polygon_contains(g, vertices: Sequence[Point], q: Point) -> bool:
    n = len(vertices)
    if n < 3:
        raise NotConvex("a polygon needs at least three vertices")
    orient = side_sign(g, vertices[0], vertices[1], vertices[2])
    if orient == Sign.ZERO:
        raise NotConvex("consecutive vertices are collinear")
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        for j in range(n):
            if j in (i, (i + 1) % n):
                continue
            if side_sign(g, a, b, vertices[j]) != orient:
                raise NotConvex(f"vertex {j} is not strictly inside edge {i}")
    return all(side_sign(g, vertices[i], vertices[(i + 1) % n], q) * orient >= 0 for i in range(n))


def equilateral_third(g, a: Point, b: Point, side: str = "plus") -> Point:
    """Third vertex of the equilateral triangle on segment ab; ``plus`` is the
    vertex to the left of the directed segment."""
    try:
        half = const_digits(g, "half")
    except UnsupportedConstant:
        raise UnsupportedConstant(f"grid {g.name} has no 1/2") from None
    if g.p2 is None or g.radicand != 3 or g.root_degree != 2:
        raise UnsupportedConstant(f"grid {g.name} has no sqrt(3)")
    if points_equal(g, a, b):
        raise CoincidentPoints("base points coincide")
    r3 = mul_by_grid_constant(g, const_digits(g, "c"), half)
    sgn = {"plus": 1, "minus": -1}[side.lower()]
    mx = mul_by_grid_constant(g, half, normalize(g, a.x + b.x))
    my = mul_by_grid_constant(g, half, normalize(g, a.y + b.y))
    dx = mul_by_grid_constant(g, r3, normalize(g, a.y - b.y))
    dy = mul_by_grid_constant(g, r3, normalize(g, b.x - a.x))
    return Point(normalize(g, mx + dx.scale(sgn)), normalize(g, my + dy.scale(sgn)))


# --- region automata ---------------------------------------------------------

_ONE = LaurentDigits({0: 1})


def region_side_dfa(g, a: Point, b: Point, orient: int = 1) -> SyncDFA:
    """2-track automaton accepting conv(v, w) iff ``orient * f(v, w) >= 0``
    for the side functional of line ab.

    The constant term K of the functional sits at fixed absolute positions,
    so it is supplied on a third track that a constant-track checker pins
    down; the track is then projected away and the result determinized
    (padding-closed, since K may reach beyond the input's span).
    """
    gw, gv, K = _side_parts(g, a, b)
    D = g.digit_bound
    lin = linear_checker(g, [(-gv).scale(orient), gw.scale(orient), _ONE.scale(orient)], "ge")
    pin = constant_track_checker(K, 2, 3, range(-D, D + 1))
    return determinize(project_track(dfa_product(pin, lin, "and"), 2), pad_prefix=True, pad_suffix=True)


def compile_region_dfa(g, T: Triangle) -> SyncDFA:
    """2-track automaton accepting conv(v, w) iff (v, w) lies in T."""
    sides = [region_side_dfa(g, p, q, int(s)) for p, q, s in _oriented_sides(g, T)]
    A = dfa_product(dfa_product(sides[0], sides[1], "and"), sides[2], "and")
    A.name = f"triangle[{g.name}]"
    return A


# --- interleaved representation ------------------------------------------------

def _rank_position(r: int) -> int:
    if r == 0:
        return 0
    return (r + 1) // 2 if r % 2 else -(r // 2)


def _position_rank(k: int) -> int:
    return 2 * k - 1 if k > 0 else -2 * k


def interleave(p: LaurentDigits) -> list[int]:
    """Digits in the order a_0 a_1 a_-1 a_2 a_-2 ..., zero-filled up to the
    last position of the span (which always contains exponent 0)."""
    if not p:
        return []
    last = max(_position_rank(max(p.hi, 0)), _position_rank(min(p.lo, 0)))
    return [p[_rank_position(r)] for r in range(last + 1)]


def deinterleave(word: Sequence[int]) -> LaurentDigits:
    return LaurentDigits((_rank_position(r), a) for r, a in enumerate(word))


# --- axis-parallel rectangles in D_p -------------------------------------------

def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def _side_value(side, p: int) -> Fraction:
    if isinstance(side, LaurentDigits):
        return sum((Fraction(p) ** k * a for k, a in side.items()), Fraction(0))
    return Fraction(side)


def _standard_digits(x: Fraction, p: int) -> LaurentDigits:
    """Non-negative base-p digits of a positive element of D_p."""
    den = x.denominator
    shift = 0
    while den % p == 0:
        den //= p
        shift += 1
    if den != 1:
        raise NotDyadicRational(f"{x} is not of the form n/{p}^m")
    n = x.numerator
    out = {}
    k = -shift
    while n:
        n, r = divmod(n, p)
        if r:
            out[k] = r
        k += 1
    return LaurentDigits(out)


def _last_nonzero_position(word: Sequence[int]) -> int:
    """Lowest exponent with a nonzero digit, read off the interleaved word."""
    return min(_rank_position(r) for r, a in enumerate(word) if a)


def rect_same_area(p: int, rect, area: tuple[int, int]) -> bool:
    """Whether a rectangle with sides in D_p has area ``l * p**k``.

    ``rect`` is an :class:`AxisRect` with base-p digit coordinates (as in
    grid ``d<p>``) or a pair of side lengths. For each factorisation
    l = l1 * l2 into factors prime to p, the sides must read as l1 * p**i and
    l2 * p**j, where i and j are the positions of the last nonzero digits,
    and i + j must equal k.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    ell, k = area
    if ell <= 0:
        raise ValueError("area coefficient must be positive")
    while ell % p == 0:
        ell //= p
        k += 1
    if isinstance(rect, AxisRect):
        w = _side_value(rect.upper_right.x, p) - _side_value(rect.lower_left.x, p)
        h = _side_value(rect.upper_right.y, p) - _side_value(rect.lower_left.y, p)
    else:
        w, h = (_side_value(s, p) for s in rect)
    if w <= 0 or h <= 0:
        raise ValueError("rectangle sides must be positive")
    words = [interleave(_standard_digits(s, p)) for s in (w, h)]
    i, j = (_last_nonzero_position(wd) for wd in words)
    l1 = w / Fraction(p) ** i
    l2 = h / Fraction(p) ** j
    factor_pairs = [(d, ell // d) for d in range(1, ell + 1) if ell % d == 0]
    return any(l1 == d1 and l2 == d2 and i + j == k for d1, d2 in factor_pairs)


# --- display -----------------------------------------------------------------

def render_svg(g, polygons: Sequence[Sequence[Point]] = (), points: Sequence[Point] = (), size: int = 400) -> str:
    """SVG drawing from approximate coordinates; display only."""
    eps = Fraction(1, 10**9)

    def xy(pt):
        return tuple(float(sum(approx_value(g, c, eps)) / 2) for c in (pt.x, pt.y))

    coords = [xy(pt) for poly in polygons for pt in poly] + [xy(pt) for pt in points]
    if not coords:
        coords = [(0.0, 0.0)]
    xs, ys = zip(*coords)
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = 0.1 * span

    def tr(c):
        return ((c[0] - lo_x + pad) / (span + 2 * pad) * size,
                size - (c[1] - lo_y + pad) / (span + 2 * pad) * size)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for poly in polygons:
        pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in (tr(xy(pt)) for pt in poly))
        out.append(f'  <polygon points="{pts}" fill="none" stroke="black"/>')
    for pt in points:
        x, y = tr(xy(pt))
        out.append(f'  <circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="red"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
