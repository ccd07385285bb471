"""Reals as infinite digit streams over a Pell-unit base.

For a non-square ``b`` and integers ``d, e > 3`` with ``d**2 = b*e**2 + 1``
the unit ``u = d + e*sqrt(b)`` satisfies ``u + 1/u = 2d``, so
``u**(k+1) - 2d*u**k + u**(k-1)`` vanishes for every ``k``. That identity
drives both the limit normalization (digits pushed into ``[-2d, 2d]``) and
a two-cell sign detector that reads digits from the top down.

Streams here have finite support and an explicit truncation depth, so the
detector can honestly answer "undecided" when the materialized prefix is
not enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .digits import LaurentDigits
from .errors import NonSquareRequired, OperandBoundExceeded, ValidationError
from .sign import Sign

__all__ = [
    "OmegaSpec",
    "OmegaStream",
    "Decided",
    "UndecidedAtTruncation",
    "pell_pair",
    "omega_spec",
    "omega_reduce",
    "omega_sign",
    "omega_compare",
    "omega_add",
    "potential",
]

# extra zero positions materialized below the support by default
DEFAULT_TAIL = 6


def pell_pair(b: int) -> tuple[int, int]:
    """Smallest ``(d, e)`` with ``d, e > 3`` and ``d*d == b*e*e + 1``."""
    if b < 2 or math.isqrt(b) ** 2 == b:
        raise NonSquareRequired(f"b={b} must be a non-square integer >= 2")
    e = 4
    while True:
        t = b * e * e + 1
        d = math.isqrt(t)
        if d * d == t and d > 3:
            return d, e
        e += 1


@dataclass(frozen=True)
class OmegaSpec:
    b: int
    d: int
    e: int

    def __post_init__(self):
        if self.d <= 3 or self.e <= 3 or self.d * self.d != self.b * self.e * self.e + 1:
            raise ValidationError(f"(d, e) = ({self.d}, {self.e}) is not a Pell pair for b={self.b}")

    @property
    def digit_bound(self) -> int:
        return 2 * self.d

    @property
    def operand_bound(self) -> int:
        return 6 * self.d

    @property
    def minpoly(self) -> tuple[int, int, int]:
        return (1, -2 * self.d, 1)

    @property
    def u_interval(self) -> tuple[Fraction, Fraction]:
        # e*sqrt(b) = sqrt(d^2 - 1) lies strictly between d-1 and d
        return (Fraction(2 * self.d - 1), Fraction(2 * self.d))

    @property
    def name(self) -> str:
        return f"omega{self.b}"


def omega_spec(b: int) -> OmegaSpec:
    d, e = pell_pair(b)
    return OmegaSpec(b, d, e)


@dataclass(frozen=True)
class OmegaStream:
    """Digits above ``digits.hi`` are zero; positions down to ``depth`` are
    materialized (zero where not in ``digits``)."""

    digits: LaurentDigits
    depth: int

    def __post_init__(self):
        if self.digits and self.digits.lo < self.depth:
            raise ValueError("support reaches below the truncation depth")

    @classmethod
    def of(cls, digits: LaurentDigits, depth: int | None = None) -> "OmegaStream":
        if depth is None:
            depth = min(digits.lo if digits else 0, 0) - DEFAULT_TAIL
        return cls(digits, depth)

    @property
    def top(self) -> int:
        return self.digits.hi if self.digits else 0


@dataclass(frozen=True)
class Decided:
    sign: Sign
    position: int  # exponent of the digit whose reading settled the sign

    def __str__(self) -> str:
        return f"Decided({self.sign})"


@dataclass(frozen=True)
class UndecidedAtTruncation:
    depth: int
    memory: tuple[int, int] = field(default=(0, 0))

    def __str__(self) -> str:
        return "UndecidedAtTruncation"


Verdict = Union[Decided, UndecidedAtTruncation]


def omega_reduce(spec: OmegaSpec, s: OmegaStream, steps: int) -> OmegaStream:
    """Apply up to ``steps`` rewrites ``a_{k+1} += t, a_k -= 2d*t,
    a_{k-1} += t`` at the highest ``k`` with ``|a_k| > 2d``."""
    bound = spec.digit_bound
    two_d = 2 * spec.d
    a = dict(s.digits.items())
    for _ in range(steps):
        over = [k for k, v in a.items() if abs(v) > bound]
        if not over:
            break
        k = max(over)
        t = 1 if a[k] > 0 else -1
        for j, delta in ((k + 1, t), (k, -two_d * t), (k - 1, t)):
            v = a.get(j, 0) + delta
            if v:
                a[j] = v
            else:
                a.pop(j, None)
    out = LaurentDigits(a)
    depth = min(s.depth, out.lo) if out else s.depth
    return OmegaStream(out, depth)


def potential(s: OmegaStream | LaurentDigits, at: Fraction = Fraction(2)) -> Fraction:
    """Weighted absolute sum ``sum |a_k| * at**k``."""
    p = s.digits if isinstance(s, OmegaStream) else s
    at = Fraction(at)
    return sum((abs(v) * at**k for k, v in p.items()), Fraction(0))


def omega_sign(spec: OmegaSpec, s: OmegaStream, *, exhaust: bool = False,
               trace: list | None = None) -> Verdict:
    """Sign detector with a two-cell memory.

    The memory ``(m1, m2)`` holds the residual coefficients at the two
    positions above the digit being read. Reading ``a`` moves it to
    ``(m2 + 2d*m1, a - m1)``. If that would push ``|m1|`` past ``306d^2`` or
    ``|m2|`` past ``106d``, the old ``m1`` (then at least ``100d`` in size)
    dominates everything below it and its sign is the answer.

    With ``exhaust`` the detector keeps reading zeros past ``depth``; for a
    finite-support stream this always terminates.
    """
    bound = spec.operand_bound
    if s.digits and s.digits.max_abs() > bound:
        raise OperandBoundExceeded(f"digit {s.digits.max_abs()} exceeds 6d = {bound}")
    d = spec.d
    cap1, cap2, floor1 = 306 * d * d, 106 * d, 100 * d
    m1 = m2 = 0
    k = s.top
    while True:
        if k < s.depth and not exhaust:
            if m1 == 0 and m2 == 0:
                return Decided(Sign.ZERO, k + 1)
            return UndecidedAtTruncation(s.depth, (m1, m2))
        if k < s.depth and m1 == 0 and m2 == 0:
            return Decided(Sign.ZERO, k + 1)
        a = s.digits[k]
        n1, n2 = m2 + 2 * d * m1, a - m1
        if abs(n1) > cap1 or abs(n2) > cap2:
            assert abs(m1) >= floor1, "overshoot with a small leading cell"
            return Decided(Sign.POSITIVE if m1 > 0 else Sign.NEGATIVE, k)
        m1, m2 = n1, n2
        if trace is not None:
            trace.append((k, m1, m2))
        k -= 1


def omega_add(spec: OmegaSpec, s1: OmegaStream, s2: OmegaStream) -> OmegaStream:
    """Digitwise sum (value-level; not renormalized)."""
    return OmegaStream(s1.digits + s2.digits, min(s1.depth, s2.depth))


def omega_compare(spec: OmegaSpec, s1: OmegaStream, s2: OmegaStream, **kw) -> Verdict:
    """Sign of ``s1 - s2``."""
    diff = OmegaStream(s1.digits - s2.digits, min(s1.depth, s2.depth))
    return omega_sign(spec, diff, **kw)
