"""Acceptance checks, shared by the test suite and ``gridctl selftest``.

Each check returns an :class:`Outcome`; none of them raise on a mismatch.
Expected values come from the exact oracle or from integer/rational
arithmetic, never from the procedures under test.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .automata import DOT, convolve
from .checkers import school_trace
from .digits import LaurentDigits, mul_poly
from .geometry import (
    AxisRect,
    Point,
    Triangle,
    compile_region_dfa,
    convex_polygon_contains,
    equilateral_third,
    point,
    points_equal,
    rect_same_area,
    rotate,
    triangle_contains,
)
from .grids import SHIPPED_GRIDS, grid_by_name
from .normalize import normalize
from .omega import Decided, OmegaStream, omega_sign, omega_spec, pell_pair
from .oracle import sign_at
from .sign import Sign, compile_sign_dfa, sign_engine, sign_of

__all__ = ["Outcome", "CRITERIA", "run_criterion", "run_all"]


@dataclass
class Outcome:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _random_vector(rng: random.Random, lo: int, hi: int, bound: int) -> LaurentDigits:
    return LaurentDigits({k: rng.randint(-bound, bound) for k in range(lo, hi + 1)})


def _random_support_vector(rng: random.Random, bound: int, span: int = 20) -> LaurentDigits:
    hi = rng.randint(-span, span)
    lo = rng.randint(-span, hi)
    return _random_vector(rng, lo, hi, bound)


# --- 1 -----------------------------------------------------------------------

TABLEAUX = (
    (("# 2 3 5 8. 2 2 5", "# 9 1 1 2. # # #", "1 1 4 7 0. 2 2 5"), "ncnncnnnn", True),
    (("3 3 3 3. 3 3 #", "# # 2 2. 2 2 2", "# 1 5 5. 5 5 2"), "iinnnnnn", False),
    (("9 9 1 2 3. 4 5 6", "# # 9 8 7. 6 5 4", "0 0 1 1 1. 1 1 #"), "ccccccccn", False),
)


def school_tableaux() -> tuple[bool, str]:
    bad = []
    for rows, expected, verdict in TABLEAUX:
        states, accepted = school_trace(rows, 10)
        if "".join(states) != expected or accepted != verdict:
            bad.append(f"{''.join(states)}/{accepted} != {expected}/{verdict}")
    return not bad, "3/3 traces reproduced" if not bad else "; ".join(bad)


# --- 2, 3 --------------------------------------------------------------------

def _corpus(g, n: int, seed: int) -> list[LaurentDigits]:
    rng = random.Random(seed)
    return [_random_support_vector(rng, g.input_bound) for _ in range(n)]


def sign_soundness(n: int = 10_000, seed: int = 2) -> tuple[bool, str]:
    parts, ok = [], True
    for name in SHIPPED_GRIDS:
        g = grid_by_name(name)
        wrong = sum(int(sign_of(g, p)) != sign_at(g, p) for p in _corpus(g, n, seed))
        ok &= wrong == 0
        parts.append(f"{name} {n - wrong}/{n}")
    return ok, ", ".join(parts)


def normalization(n: int = 10_000, seed: int = 2) -> tuple[bool, str]:
    parts, ok = [], True
    for name in SHIPPED_GRIDS:
        g = grid_by_name(name)
        wrong = 0
        for p in _corpus(g, n, seed):
            q = normalize(g, p)
            if q.max_abs() > g.digit_bound or normalize(g, q) != q or sign_at(g, q - p) != 0:
                wrong += 1
        ok &= wrong == 0
        parts.append(f"{name} {n - wrong}/{n}")
    return ok, ", ".join(parts)


# --- 4 -----------------------------------------------------------------------

def _word_value(word) -> LaurentDigits:
    top = len(word) - 1
    return LaurentDigits({top - i: a for i, a in enumerate(word)})


def dfa_matches_procedure(max_len: int = 6, n: int = 10_000, seed: int = 4) -> tuple[bool, str]:
    parts, ok = [], True
    g = grid_by_name("sqrt2half")
    A = compile_sign_dfa(g)
    D = g.digit_bound
    count = wrong = 0
    for length in range(max_len + 1):
        for word in itertools.product(range(-D, D + 1), repeat=length):
            count += 1
            wrong += A.run([(a,) for a in word]) != sign_of(g, _word_value(word))
    ok &= wrong == 0
    parts.append(f"sqrt2half exhaustive {count - wrong}/{count}")
    rng = random.Random(seed)
    for name in SHIPPED_GRIDS:
        g = grid_by_name(name)
        A = compile_sign_dfa(g)
        B = g.input_bound
        wrong = 0
        for _ in range(n):
            word = [rng.randint(-B, B) for _ in range(rng.randint(max_len + 1, 40))]
            letters = [(a,) for a in word]
            letters.insert(rng.randint(0, len(letters)), DOT)
            wrong += A.run(letters) != sign_of(g, _word_value(word))
        ok &= wrong == 0
        parts.append(f"{name} {n - wrong}/{n}")
    return ok, ", ".join(parts)


# --- 5 -----------------------------------------------------------------------

def _wide_sign(g, p: LaurentDigits) -> Sign:
    return sign_of(g, p, engine=sign_engine(g, max(p.max_abs(), 1)))


def constant_identities() -> tuple[bool, str]:
    checked, bad = 0, []
    one = LaurentDigits({0: 1})
    for name in SHIPPED_GRIDS:
        g = grid_by_name(name)
        exprs = {"p3": g.p3_digits(), "p4": g.p4}
        if g.p1 is not None:
            exprs["b*p1-1"] = g.p1.scale(g.b) - one
        if g.p2 is not None:
            power = g.p2
            for _ in range(g.root_degree - 1):
                power = mul_poly(power, g.p2)
            exprs[f"p2^{g.root_degree}-{g.radicand}"] = power - one.scale(g.radicand)
        for label, p in exprs.items():
            checked += 1
            if _wide_sign(g, p) != Sign.ZERO:
                bad.append(f"{name}:{label}")
    return not bad, f"{checked - len(bad)}/{checked} identities vanish" + (f"; failed {bad}" if bad else "")


# --- 6 -----------------------------------------------------------------------

def _random_point(g, rng: random.Random, lo: int = -2, hi: int = 1) -> Point:
    D = g.digit_bound
    return Point(_random_vector(rng, lo, hi, D), _random_vector(rng, lo, hi, D))


def _iterate(g, p: Point, angle: int, times: int) -> Point:
    for _ in range(times):
        p = rotate(g, p, angle)
    return p


def rotation_algebra(n: int = 100, seed: int = 6) -> tuple[bool, str]:
    rng = random.Random(seed)
    g3 = grid_by_name("sqrt3half")
    g2 = grid_by_name("sqrt2half")
    bad = [0, 0, 0]
    for _ in range(n):
        p = _random_point(g3, rng)
        bad[0] += not points_equal(g3, _iterate(g3, p, 30, 12), p)
        bad[1] += not points_equal(g3, _iterate(g3, p, 30, 2), rotate(g3, p, 60))
        q = _random_point(g2, rng)
        bad[2] += not points_equal(g2, _iterate(g2, q, 45, 8), q)
    detail = f"r30^12=id {n - bad[0]}/{n}, r30^2=r60 {n - bad[1]}/{n}, r45^8=id {n - bad[2]}/{n}"
    return not any(bad), detail


# --- 7 -----------------------------------------------------------------------

def _orient(g, a: Point, b: Point, q: Point) -> int:
    """Exact sign of the cross product (b - a) x (q - a), unnormalized."""
    det = mul_poly(b.x - a.x, q.y - a.y) - mul_poly(b.y - a.y, q.x - a.x)
    return sign_at(g, det)


def _oracle_inside(g, poly, q) -> bool:
    n = len(poly)
    orient = _orient(g, poly[0], poly[1], poly[2])
    return all(_orient(g, poly[i], poly[(i + 1) % n], q) * orient >= 0 for i in range(n))


def _strictly_convex(g, poly) -> bool:
    n = len(poly)
    orient = _orient(g, poly[0], poly[1], poly[2])
    if orient == 0:
        return False
    return all(
        _orient(g, poly[i], poly[(i + 1) % n], poly[j]) == orient
        for i in range(n)
        for j in range(n)
        if j not in (i, (i + 1) % n)
    )


def _small_point(g, rng: random.Random) -> Point:
    D = min(g.digit_bound, 3)
    return Point(_random_vector(rng, -1, 0, D), _random_vector(rng, -1, 0, D))


def geometry_matches_oracle(n: int = 1000, seed: int = 7) -> tuple[bool, str]:
    rng = random.Random(seed)
    parts, ok = [], True
    for name in SHIPPED_GRIDS:
        g = grid_by_name(name)
        wrong = inside = 0
        for _ in range(n):
            while True:
                tri = [_small_point(g, rng) for _ in range(3)]
                if _orient(g, *tri) != 0:
                    break
            q = _small_point(g, rng)
            want = _oracle_inside(g, tri, q)
            inside += want
            wrong += triangle_contains(g, Triangle(*tri), q) != want
            while True:
                poly = [_small_point(g, rng) for _ in range(4)]
                if _strictly_convex(g, poly):
                    break
            q = _small_point(g, rng)
            want = _oracle_inside(g, poly, q)
            inside += want
            wrong += convex_polygon_contains(g, poly, q) != want
        ok &= wrong == 0
        parts.append(f"{name} {2 * n - wrong}/{2 * n} ({inside} inside)")
    return ok, ", ".join(parts)


# --- 8 -----------------------------------------------------------------------

def _sq_dist(a: Point, b: Point) -> LaurentDigits:
    dx, dy = a.x - b.x, a.y - b.y
    return mul_poly(dx, dx) + mul_poly(dy, dy)


def equilateral_sides(n: int = 100, seed: int = 8) -> tuple[bool, str]:
    rng = random.Random(seed)
    g = grid_by_name("sqrt3half")
    wrong = 0
    for _ in range(n):
        while True:
            a, b = _random_point(g, rng), _random_point(g, rng)
            if sign_at(g, _sq_dist(a, b)) != 0:
                break
        c = equilateral_third(g, a, b, rng.choice(("plus", "minus")))
        ab, bc, ca = _sq_dist(a, b), _sq_dist(b, c), _sq_dist(c, a)
        wrong += sign_at(g, ab - bc) != 0 or sign_at(g, bc - ca) != 0
    return wrong == 0, f"{n - wrong}/{n} segments give three equal squared sides"


# --- 9 -----------------------------------------------------------------------

def region_triangles(g) -> list[Triangle]:
    half = LaurentDigits({-1: 1})
    return [
        Triangle(point(g, 0, 0), point(g, 1, 0), point(g, 0, 1)),
        Triangle(Point(half, -half), point(g, 1, half), Point(-half, LaurentDigits({0: 1}))),
        Triangle(point(g, 1, 1), point(g, 0, -1), point(g, -1, 0)),
    ]


def region_dfa_exhaustive(max_span: int = 4, grid: str = "d2") -> tuple[bool, str]:
    g = grid_by_name(grid)
    D = g.digit_bound
    words: dict[tuple, Point] = {}
    for span in range(1, max_span + 1):
        for top in range(span):
            for xs in itertools.product(range(-D, D + 1), repeat=span):
                x = LaurentDigits({top - i: v for i, v in enumerate(xs)})
                for ys in itertools.product(range(-D, D + 1), repeat=span):
                    y = LaurentDigits({top - i: v for i, v in enumerate(ys)})
                    w = convolve([x, y])
                    if len(w.symbols) <= max_span:
                        words.setdefault(tuple(w.letters()), Point(x, y))
    parts, ok = [], True
    for i, T in enumerate(region_triangles(g)):
        A = compile_region_dfa(g, T)
        wrong = inside = 0
        for letters, q in words.items():
            want = triangle_contains(g, T, q)
            inside += want
            wrong += A.accepts(letters) != want
        ok &= wrong == 0
        parts.append(f"T{i + 1} {len(words) - wrong}/{len(words)} ({inside} inside)")
    return ok, f"{grid}: " + ", ".join(parts)


# --- 10 ----------------------------------------------------------------------

def rectangle_areas() -> tuple[bool, str]:
    sides = [Fraction(l) * Fraction(2) ** i for l in range(1, 11, 2) for i in range(-5, 6)]
    areas = [(l, k) for l in (1, 3, 5) for k in range(-3, 4)]
    total = wrong = hits = 0
    for w in sides:
        for h in sides:
            for l, k in areas:
                want = w * h == l * Fraction(2) ** k
                hits += want
                total += 1
                wrong += rect_same_area(2, (w, h), (l, k)) != want
    return wrong == 0, f"{total - wrong}/{total} ({hits} same-area)"


# --- 11, 12 ------------------------------------------------------------------

def omega_detector(n: int = 10_000, seed: int = 11) -> tuple[bool, str]:
    spec = omega_spec(2)
    if (spec.d, spec.e) != (17, 12):
        return False, f"pell_pair(2) = {(spec.d, spec.e)}"
    d = spec.d
    rng = random.Random(seed)
    wrong = undecided = 0
    for _ in range(n):
        p = _random_support_vector(rng, 6 * d, span=10)
        trace: list = []
        verdict = omega_sign(spec, OmegaStream.of(p), trace=trace)
        if any(abs(m1) > 306 * d * d or abs(m2) > 106 * d for _, m1, m2 in trace):
            return False, "memory bound exceeded before overshoot"
        if isinstance(verdict, Decided):
            wrong += int(verdict.sign) != sign_at(spec, p)
        else:
            undecided += 1
    decided = n - undecided
    return wrong == 0, f"{decided - wrong}/{decided} decided verdicts match, {undecided} undecided, memory within bounds"


def pell_pairs() -> tuple[bool, str]:
    out = []
    ok = True
    for b in (2, 3, 5, 6, 7, 8, 10):
        d, e = pell_pair(b)
        ok &= d * d == b * e * e + 1 and d > 3 and e > 3
        out.append(f"{b}:({d},{e})")
    return ok, " ".join(out)


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]]]] = {
    1: ("school adder tableaux", school_tableaux),
    2: ("sign procedure vs oracle", sign_soundness),
    3: ("normalization", normalization),
    4: ("sign automaton vs procedure", dfa_matches_procedure),
    5: ("constant identities", constant_identities),
    6: ("rotation algebra", rotation_algebra),
    7: ("containment vs oracle", geometry_matches_oracle),
    8: ("equilateral construction", equilateral_sides),
    9: ("region automaton", region_dfa_exhaustive),
    10: ("rectangle same-area", rectangle_areas),
    11: ("omega sign detector", omega_detector),
    12: ("Pell pairs", pell_pairs),
}


def run_criterion(number: int) -> Outcome:
    title, fn = CRITERIA[number]
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Outcome(number, title, ok, detail, time.perf_counter() - t0)


def run_all(numbers=None) -> list[Outcome]:
    return [run_criterion(n) for n in (numbers or sorted(CRITERIA))]
