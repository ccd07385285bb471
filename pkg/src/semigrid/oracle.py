"""Exact ground truth for values of digit vectors at an algebraic base ``u``.

The base is anything exposing ``minpoly`` (integer coefficients, highest
degree first) and ``u_interval`` (a pair of Fractions isolating ``u``).
Zero detection is algebraic (remainder and gcd against the minimal
polynomial); intervals are only used to read off the sign of a value that is
already known to be nonzero. No floating point is involved.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Protocol, Sequence

from .digits import LaurentDigits
from .errors import InvalidGrid

__all__ = [
    "AlgebraicBase",
    "sign_at",
    "approx_value",
    "u_bracket",
    "sturm_root_count",
    "poly_eval",
]


class AlgebraicBase(Protocol):
    minpoly: tuple[int, ...]
    u_interval: tuple[Fraction, Fraction]


# Polynomials below are coefficient lists in ascending degree.

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_rem(p: Sequence, m: Sequence) -> list:
    r = list(p)
    lead = m[-1]
    dm = len(m) - 1
    exact = abs(lead) == 1
    while len(_trim(r)) - 1 >= dm:
        shift = len(r) - 1 - dm
        q = r[-1] * lead if exact else Fraction(r[-1], 1) / lead
        for i, c in enumerate(m):
            r[shift + i] -= q * c
        r.pop()
    return r


def _poly_gcd(a: Sequence, b: Sequence) -> list:
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    while b:
        a, b = b, _trim(_poly_rem(a, b))
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _deriv(p: Sequence) -> list:
    return [i * c for i, c in enumerate(p)][1:]


def sturm_root_count(p_desc: Sequence[int], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    p = _trim([Fraction(c) for c in reversed(p_desc)])
    if len(p) <= 1:
        return 0
    seq = [p, _trim(_deriv(p))]
    while seq[-1] and len(seq[-1]) > 1:
        r = _trim(_poly_rem(seq[-2], seq[-1]))
        if not r:
            break
        seq.append([-c for c in r])

    def changes(x):
        vals = [poly_eval(q, x) for q in seq if q]
        vals = [v for v in vals if v != 0]
        return sum(1 for a, b in zip(vals, vals[1:]) if (a < 0) != (b < 0))

    return changes(lo) - changes(hi)


_BISECT_STEP = 64


@lru_cache(maxsize=512)
def u_bracket(minpoly: tuple[int, ...], lo: Fraction, hi: Fraction, level: int) -> tuple[Fraction, Fraction]:
    """Isolating interval for the root of ``minpoly`` in [lo, hi] after
    ``level * 64`` bisection steps."""
    if level == 0:
        return lo, hi
    a, b = u_bracket(minpoly, lo, hi, level - 1)
    if a == b:
        return a, b
    m = list(reversed(minpoly))
    sa = poly_eval(m, a) < 0
    for _ in range(_BISECT_STEP):
        mid = (a + b) / 2
        v = poly_eval(m, mid)
        if v == 0:
            return mid, mid
        if (v < 0) == sa:
            a = mid
        else:
            b = mid
    return a, b


def _interval_eval(p: Sequence, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Interval Horner evaluation over x in [a, b], 0 < a <= b."""
    lo = hi = Fraction(0)
    for c in reversed(p):
        cands = (lo * a, lo * b, hi * a, hi * b)
        lo, hi = min(cands) + c, max(cands) + c
    return lo, hi


def _cleared(p: LaurentDigits) -> tuple[list[int], int]:
    """Ascending integer coefficients of ``u**(-lo) * p`` and ``lo``."""
    lo = p.lo
    coeffs = [0] * (p.hi - lo + 1)
    for k, a in p.items():
        coeffs[k - lo] = a
    return coeffs, lo


def _check_base(base: AlgebraicBase) -> tuple[list[int], Fraction, Fraction]:
    m = list(reversed(base.minpoly))
    lo, hi = base.u_interval
    if len(m) < 2 or m[-1] == 0 or not (0 < lo <= hi):
        raise InvalidGrid("minimal polynomial or isolating interval unusable")
    return m, Fraction(lo), Fraction(hi)


def _reduced(base: AlgebraicBase, p: LaurentDigits):
    m, lo, hi = _check_base(base)
    coeffs, shift = _cleared(p)
    return m, lo, hi, _trim(_poly_rem(coeffs, m)), shift


def _is_root(base: AlgebraicBase, m: list, r: list, lo: Fraction, hi: Fraction) -> bool:
    g = _poly_gcd(r, m)
    if len(g) <= 1:
        return False
    # g divides minpoly; u is its root iff g has a root in the isolating interval.
    a, b = u_bracket(tuple(base.minpoly), lo, hi, 1)
    if a == b:
        return poly_eval(g, a) == 0
    return sturm_root_count(list(reversed(g)), a, b) > 0 or poly_eval(g, a) == 0


def sign_at(base: AlgebraicBase, p: LaurentDigits) -> int:
    """Exact sign (-1, 0, 1) of ``p(u)``."""
    if not p:
        return 0
    m, lo, hi, r, _ = _reduced(base, p)
    if not r:
        return 0
    if len(m) > 2 and _is_root(base, m, r, lo, hi):
        return 0
    key = tuple(base.minpoly)
    level = 1
    while True:
        a, b = u_bracket(key, lo, hi, level)
        if a == b:
            v = poly_eval(r, a)
            return (v > 0) - (v < 0)
        vlo, vhi = _interval_eval(r, a, b)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        level += 1


def approx_value(base: AlgebraicBase, p: LaurentDigits, precision: Fraction | str = Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    """Rational interval of width at most ``precision`` containing ``p(u)``."""
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    if not p:
        return Fraction(0), Fraction(0)
    m, lo, hi, r, shift = _reduced(base, p)
    if not r:
        return Fraction(0), Fraction(0)
    key = tuple(base.minpoly)
    level = 1
    while True:
        a, b = u_bracket(key, lo, hi, level)
        vlo, vhi = _interval_eval(r, a, b)
        if shift >= 0:
            slo, shi = a**shift, b**shift
        else:
            slo, shi = b**shift, a**shift
        cands = (vlo * slo, vlo * shi, vhi * slo, vhi * shi)
        out = (min(cands), max(cands))
        if out[1] - out[0] <= precision or a == b:
            return out
        level += 1
