"""Grid instances: the base ``u``, the four defining polynomials and the
bounds used by normalization and sign determination."""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .digits import LaurentDigits, mul_poly, parse_digits, format_digits
from .errors import InvalidGrid, UnsupportedConstant, ValidationError
from .normalize import normalize
from .oracle import poly_eval, sign_at, sturm_root_count

__all__ = [
    "GridSpec",
    "make_grid",
    "grid_by_name",
    "SHIPPED_GRIDS",
    "validate_grid",
    "GridReport",
    "const_digits",
    "load_grid",
    "grid_from_dict",
    "grid_to_dict",
]


@dataclass(frozen=True)
class GridSpec:
    name: str
    minpoly: tuple[int, ...]  # highest degree first
    u_interval: tuple[Fraction, Fraction]
    p3: tuple[int, ...]  # d_0, d_-1, ..., d_{-h+1}
    p4: LaurentDigits
    ell: int
    digit_bound: int
    window_bounds: tuple[int, ...]
    input_bound: int
    p1: LaurentDigits | None = None
    p2: LaurentDigits | None = None
    b: int | None = None
    radicand: int | None = None
    root_degree: int | None = None

    @property
    def h(self) -> int:
        return len(self.p3)

    @property
    def e_ell(self) -> int:
        return self.p4[self.ell]

    @property
    def c_hat(self) -> int:
        return min(self.window_bounds)

    def p3_digits(self) -> LaurentDigits:
        return LaurentDigits({-i: d for i, d in enumerate(self.p3)})

    def __str__(self) -> str:
        return self.name


def _db(b: int) -> GridSpec:
    if b < 2:
        raise InvalidGrid("base must be at least 2")
    half = Fraction(1, 2)
    return GridSpec(
        name=f"d{b}",
        minpoly=(1, -b),
        u_interval=(b - half, b + half),
        p3=(1, -b),
        p4=LaurentDigits({1: -1, 0: b}),
        ell=0,
        digit_bound=b - 1,
        window_bounds=(10 * b, 10 * b),
        input_bound=3 * b,
        p1=LaurentDigits({-1: 1}),
        b=b,
    )


def _sqrt2half() -> GridSpec:
    return GridSpec(
        name="sqrt2half",
        minpoly=(1, -4, 2),
        u_interval=(Fraction(341, 100), Fraction(342, 100)),
        p3=(1, -4, 2),
        p4=LaurentDigits({1: -1, 0: 4, -1: -2}),
        ell=0,
        digit_bound=3,
        window_bounds=(100, 100, 100),
        input_bound=12,
        p1=LaurentDigits({-1: 2, -2: -1}),
        p2=LaurentDigits({0: 2, -1: -2}),
        b=2,
        radicand=2,
        root_degree=2,
    )


def _sqrt_b2m1_half(b: int) -> GridSpec:
    if b < 2:
        raise InvalidGrid("b must be at least 2")
    bb = b * b
    # u = b^2 + sqrt(b^4 - b^2); the other root lies below 1.
    s = math.isqrt(bb * bb - bb)
    c_hat = 1000 * b**5
    name = "sqrt3half" if b == 2 else f"sqrtb2m1half:{b}"
    return GridSpec(
        name=name,
        minpoly=(1, -2 * bb, bb),
        u_interval=(Fraction(bb + s), Fraction(bb + s + 1)),
        p3=(1, -2 * bb, bb),
        p4=LaurentDigits({1: -1, 0: 2 * bb, -1: -bb}),
        ell=0,
        digit_bound=2 * bb - 1,
        window_bounds=(c_hat, c_hat, c_hat),
        input_bound=6 * bb,
        p1=LaurentDigits({-1: 2 * b, -2: -b}),
        p2=LaurentDigits({0: b, -1: -b}),
        b=b,
        radicand=bb - 1,
        root_degree=2,
    )


def _cbrt7() -> GridSpec:
    c_hat = 360
    return GridSpec(
        name="cbrt7",
        minpoly=(1, -12, 6, -1),
        u_interval=(Fraction(11), Fraction(12)),
        p3=(1, -12, 6, -1),
        p4=LaurentDigits({0: -1, -1: 12, -2: -6, -3: 1}),
        ell=-1,
        digit_bound=12,
        window_bounds=(16 * c_hat, 4 * c_hat, c_hat, c_hat),
        input_bound=36,
        p2=LaurentDigits({0: 2, -1: -1}),
        radicand=7,
        root_degree=3,
    )


def _cbrt65half() -> GridSpec:
    c_hat = 285000
    return GridSpec(
        name="cbrt65half",
        minpoly=(1, -96, -48, -8),
        u_interval=(Fraction(9649, 100), Fraction(9650, 100)),
        p3=(1, -96, -48, -8),
        p4=LaurentDigits({0: -1, -1: 96, -2: 48, -3: 8}),
        ell=-1,
        digit_bound=95,
        window_bounds=(19 * c_hat, 7 * c_hat, c_hat, c_hat),
        input_bound=285,
        p1=LaurentDigits({-1: 48, -2: 24, -3: 4}),
        p2=LaurentDigits({0: 4, -1: 2}),
        b=2,
        radicand=65,
        root_degree=3,
    )


_KINDS = {
    "db": _db,
    "sqrt2half": _sqrt2half,
    "sqrtb2m1half": _sqrt_b2m1_half,
    "cbrt7": _cbrt7,
    "cbrt65half": _cbrt65half,
}

SHIPPED_GRIDS = ("d2", "d10", "sqrt2half", "sqrt3half", "cbrt7", "cbrt65half")


def make_grid(kind: str, b: int | None = None, *, validate: bool = True) -> GridSpec:
    """Build one of the shipped grid families.

    ``kind`` is one of ``db``, ``sqrt2half``, ``sqrtb2m1half``, ``cbrt7``,
    ``cbrt65half``; the first and third take the integer ``b``.
    """
    try:
        factory = _KINDS[kind.lower()]
    except KeyError:
        raise InvalidGrid(f"unknown grid kind {kind!r}") from None
    if kind.lower() in ("db", "sqrtb2m1half"):
        if b is None:
            raise InvalidGrid(f"grid kind {kind!r} needs b")
        g = factory(b)
    else:
        g = factory()
    if validate:
        report = validate_grid(g, fuzz=0)
        if not report.ok:
            raise ValidationError(f"grid {g.name} failed: {report.failures()}")
    return g


_NAMED: dict[str, GridSpec] = {}


def grid_by_name(name: str) -> GridSpec:
    """``d<b>``, ``sqrt2half``, ``sqrt3half``, ``sqrtb2m1half:<b>``, ``cbrt7``, ``cbrt65half``."""
    key = name.strip().lower()
    if key in _NAMED:
        return _NAMED[key]
    if key.startswith("d") and key[1:].isdigit():
        g = make_grid("db", int(key[1:]))
    elif key == "sqrt3half":
        g = make_grid("sqrtb2m1half", 2)
    elif key.startswith("sqrtb2m1half:"):
        g = make_grid("sqrtb2m1half", int(key.split(":", 1)[1]))
    elif key in _KINDS and key not in ("db", "sqrtb2m1half"):
        g = make_grid(key)
    else:
        raise InvalidGrid(f"unknown grid {name!r}")
    _NAMED[key] = g
    return g


def const_digits(g: GridSpec, which: str | int) -> LaurentDigits:
    """Normal-form digits of a grid constant: an integer, ``"one"``,
    ``"inv_b"`` (needs p1), ``"c"`` (needs p2) or ``"half"``."""
    if isinstance(which, int):
        return normalize(g, LaurentDigits({0: which}))
    key = which.lower()
    if key == "one":
        return normalize(g, LaurentDigits({0: 1}))
    if key == "inv_b":
        if g.p1 is None:
            raise UnsupportedConstant(f"grid {g.name} has no 1/b")
        return normalize(g, g.p1)
    if key == "c":
        if g.p2 is None:
            raise UnsupportedConstant(f"grid {g.name} has no root constant")
        return normalize(g, g.p2)
    if key == "half":
        if g.p1 is None or g.b is None or g.b % 2:
            raise UnsupportedConstant(f"grid {g.name} cannot divide by 2")
        return normalize(g, g.p1.scale(g.b // 2))
    raise UnsupportedConstant(f"unknown constant {which!r}")


# --- validation -----------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class GridReport:
    grid: str
    checks: list[Check] = field(default_factory=list)
    fuzz_trials: int = 0
    fuzz_overshoots: int = 0
    fuzz_failures: int = 0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and self.fuzz_failures == 0

    def failures(self) -> list[str]:
        out = [f"{c.name}: {c.detail}" for c in self.checks if not c.ok]
        if self.fuzz_failures:
            out.append(f"termination: {self.fuzz_failures} of {self.fuzz_overshoots} overshoots violate the tail bound")
        return out

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.ok else 'FAIL'} {c.name}{': ' + c.detail if c.detail else ''}" for c in self.checks]
        out.append(
            f"{'PASS' if self.fuzz_failures == 0 else 'FAIL'} termination-fuzz: "
            f"trials={self.fuzz_trials} overshoots={self.fuzz_overshoots} failures={self.fuzz_failures}"
        )
        return out


def _power(p: LaurentDigits, n: int) -> LaurentDigits:
    out = LaurentDigits({0: 1})
    for _ in range(n):
        out = mul_poly(out, p)
    return out


def validate_grid(g: GridSpec, fuzz: int = 2000, seed: int = 0, scale: int = 1) -> GridReport:
    """Check every structural invariant exactly, then fuzz the termination
    condition of the sign algorithm on ``fuzz`` random windows.

    The fuzz is empirical evidence, not a proof. ``scale`` multiplies both the
    window caps and the operand bound, as used for wide-operand sign engines.
    """
    rep = GridReport(g.name)
    rep.add("d0=1", g.p3 and g.p3[0] == 1, f"d_0={g.p3[0] if g.p3 else None}")
    others = sum(abs(a) for k, a in g.p4.items() if k != g.ell)
    rep.add("p4-dominance", g.e_ell > others, f"e_ell={g.e_ell} others={others}")
    rep.add("digit-bound", 0 < g.digit_bound <= g.e_ell, f"D={g.digit_bound} e_ell={g.e_ell}")
    rep.add("input-bound", g.input_bound >= 3 * g.digit_bound, f"B={g.input_bound}")
    rep.add("window-length", len(g.window_bounds) == g.h, f"h={g.h} bounds={len(g.window_bounds)}")
    rep.add("c_hat>3e_ell", g.c_hat > 3 * g.e_ell, f"c_hat={g.c_hat}")

    lo, hi = g.u_interval
    m = list(reversed(g.minpoly))
    interval_ok = lo > 1 and lo <= hi
    if interval_ok:
        roots = sturm_root_count(g.minpoly, lo, hi) + (1 if poly_eval(m, lo) == 0 else 0)
        interval_ok = roots == 1 and (lo == hi or poly_eval(m, lo) * poly_eval(m, hi) <= 0)
        rep.add("u-isolated", interval_ok, f"[{lo}, {hi}] roots={roots}")
    else:
        rep.add("u-isolated", False, f"[{lo}, {hi}] must lie above 1")
    if not interval_ok:
        return rep

    try:
        rep.add("p3(u)=0", sign_at(g, g.p3_digits()) == 0)
        rep.add("p4(u)=0", sign_at(g, g.p4) == 0)
        if g.p1 is not None:
            ok = g.b is not None and sign_at(g, g.p1.scale(g.b) - LaurentDigits({0: 1})) == 0
            rep.add("b*p1(u)=1", ok)
        if g.p2 is not None and g.radicand is not None:
            power = _power(g.p2, g.root_degree or 2)
            rep.add("p2(u)^deg=radicand", sign_at(g, power - LaurentDigits({0: g.radicand})) == 0)
            rep.add("p2(u)>0", sign_at(g, g.p2) > 0)
    except Exception as exc:  # structured failure, never abort
        rep.add("oracle", False, repr(exc))
        return rep

    if fuzz:
        _fuzz_termination(g, rep, fuzz, seed, scale)
    return rep


def _fuzz_termination(g: GridSpec, rep: GridReport, trials: int, seed: int, scale: int) -> None:
    rng = random.Random(seed)
    caps = [c * scale for c in g.window_bounds]
    bound = g.input_bound * scale
    h = g.h
    d = g.p3
    for _ in range(trials):
        rep.fuzz_trials += 1
        w = [rng.randint(-c, c) for c in caps[:-1]] + [rng.randint(-bound, bound)]
        # bias the leading entry towards its cap so that overshoots occur
        if rng.random() < 0.5:
            w[0] = rng.choice((-1, 1)) * rng.randint(caps[0] // 2, caps[0])
        lead = w[0]
        new = [w[j + 1] - lead * d[j + 1] for j in range(h - 1)] + [rng.randint(-bound, bound)]
        if all(abs(x) <= c for x, c in zip(new, caps)):
            continue
        rep.fuzz_overshoots += 1
        if not _tail_dominated(g, new, bound):
            rep.fuzz_failures += 1


def _tail_dominated(g: GridSpec, window: list[int], bound: int) -> bool:
    """|sum w_j u^-j| > bound * u^-h / (1 - u^-1), decided exactly."""
    wd = LaurentDigits({-j: a for j, a in enumerate(window)})
    s = sign_at(g, wd)
    if s == 0:
        return False
    lhs = (wd - wd.shift(-1)).scale(s)
    return sign_at(g, lhs - LaurentDigits({-g.h: bound})) > 0


# --- JSON -----------------------------------------------------------------

def grid_to_dict(g: GridSpec) -> dict:
    d = {
        "name": g.name,
        "minpoly": list(g.minpoly),
        "u_interval": [str(g.u_interval[0]), str(g.u_interval[1])],
        "p3": list(g.p3),
        "p4": {str(k): a for k, a in g.p4.items()},
        "ell": g.ell,
        "digit_bound": g.digit_bound,
        "window_bounds": list(g.window_bounds),
        "input_bound": g.input_bound,
    }
    if g.p1 is not None:
        d["p1"] = format_digits(g.p1)
    if g.p2 is not None:
        d["p2"] = format_digits(g.p2)
    for key in ("b", "radicand", "root_degree"):
        if getattr(g, key) is not None:
            d[key] = getattr(g, key)
    return d


def grid_from_dict(d: dict) -> GridSpec:
    try:
        return GridSpec(
            name=str(d["name"]),
            minpoly=tuple(int(c) for c in d["minpoly"]),
            u_interval=(Fraction(d["u_interval"][0]), Fraction(d["u_interval"][1])),
            p3=tuple(int(c) for c in d["p3"]),
            p4=LaurentDigits({int(k): int(a) for k, a in d["p4"].items()}),
            ell=int(d["ell"]),
            digit_bound=int(d["digit_bound"]),
            window_bounds=tuple(int(c) for c in d["window_bounds"]),
            input_bound=int(d["input_bound"]),
            p1=parse_digits(d["p1"]) if d.get("p1") else None,
            p2=parse_digits(d["p2"]) if d.get("p2") else None,
            b=d.get("b"),
            radicand=d.get("radicand"),
            root_degree=d.get("root_degree"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGrid(f"bad grid description: {exc}") from exc


def load_grid(path: str | Path) -> GridSpec:
    with open(path) as fh:
        return grid_from_dict(json.load(fh))
