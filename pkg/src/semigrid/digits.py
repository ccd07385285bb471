"""Finite integer digit vectors ``sum a_k u**k`` and their ring-free manipulations.

Two text forms are supported:

* compact: ``{0:2,-1:-2}`` (exponent:coefficient pairs, any order on input)
* pretty:  ``[2].[-2]`` (bracketed signed digits, radix dot between exponents
  0 and -1, zero-filled across the span)
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import ParseError

__all__ = [
    "LaurentDigits",
    "parse_digits",
    "format_digits",
    "add_digits",
    "negate_digits",
    "shift_digits",
    "mul_poly",
    "ZERO",
]


class LaurentDigits:
    """Immutable finite-support map from exponent to nonzero integer."""

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(coeffs, Mapping):
            pairs = coeffs.items()
        else:
            pairs = coeffs
        acc: dict[int, int] = {}
        for k, a in pairs:
            k = int(k)
            acc[k] = acc.get(k, 0) + int(a)
        items = tuple(sorted(((k, a) for k, a in acc.items() if a), reverse=True))
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_map", dict(items))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentDigits is immutable")

    @classmethod
    def from_int(cls, n: int) -> "LaurentDigits":
        return cls({0: n})

    @classmethod
    def from_sequence(cls, top: int, digits: Iterable[int]) -> "LaurentDigits":
        """Digits listed most significant first, the first one at exponent ``top``."""
        return cls((top - i, a) for i, a in enumerate(digits))

    # mapping-ish access
    def __getitem__(self, k: int) -> int:
        return self._map.get(k, 0)

    def items(self) -> tuple[tuple[int, int], ...]:
        """(exponent, coefficient) pairs, exponents descending."""
        return self._items

    def __iter__(self) -> Iterator[int]:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    @property
    def hi(self) -> int | None:
        return self._items[0][0] if self._items else None

    @property
    def lo(self) -> int | None:
        return self._items[-1][0] if self._items else None

    def max_abs(self) -> int:
        return max((abs(a) for _, a in self._items), default=0)

    def norm1(self) -> int:
        return sum(abs(a) for _, a in self._items)

    def dense(self, top: int, bottom: int) -> list[int]:
        """Coefficients for exponents ``top, top-1, ..., bottom``."""
        return [self._map.get(k, 0) for k in range(top, bottom - 1, -1)]

    # arithmetic
    def __add__(self, other: "LaurentDigits") -> "LaurentDigits":
        if not isinstance(other, LaurentDigits):
            return NotImplemented
        return LaurentDigits(self._items + other._items)

    def __neg__(self) -> "LaurentDigits":
        return LaurentDigits((k, -a) for k, a in self._items)

    def __sub__(self, other: "LaurentDigits") -> "LaurentDigits":
        if not isinstance(other, LaurentDigits):
            return NotImplemented
        return self + (-other)

    def scale(self, n: int) -> "LaurentDigits":
        return LaurentDigits((k, n * a) for k, a in self._items)

    def shift(self, h: int) -> "LaurentDigits":
        return LaurentDigits((k + h, a) for k, a in self._items)

    def __mul__(self, other: "LaurentDigits") -> "LaurentDigits":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentDigits):
            return NotImplemented
        return mul_poly(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentDigits):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._items))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentDigits({format_digits(self)})"

    def __str__(self) -> str:
        return format_digits(self)


ZERO = LaurentDigits()


def mul_poly(p: LaurentDigits, q: LaurentDigits) -> LaurentDigits:
    """Exact product of two Laurent polynomials (no normalization)."""
    acc: dict[int, int] = {}
    for k, a in p.items():
        for j, b in q.items():
            acc[k + j] = acc.get(k + j, 0) + a * b
    return LaurentDigits(acc)


def add_digits(p: LaurentDigits, q: LaurentDigits) -> LaurentDigits:
    return p + q


def negate_digits(p: LaurentDigits) -> LaurentDigits:
    return -p


def shift_digits(p: LaurentDigits, h: int) -> LaurentDigits:
    return p.shift(h)


def format_digits(p: LaurentDigits, style: str = "compact") -> str:
    if not p:
        return "{}"
    if style == "compact":
        return "{" + ",".join(f"{k}:{a}" for k, a in p.items()) + "}"
    if style != "pretty":
        raise ValueError(f"unknown style {style!r}")
    top = max(p.hi, 0)
    parts = []
    for k in range(top, min(p.lo, 0) - 1, -1):
        parts.append(f"[{p[k]}]")
        if k == 0 and p.lo < 0:
            parts.append(".")
    return "".join(parts)


_COMPACT_ITEM = re.compile(r"\s*([+-]?\d+)\s*:\s*([+-]?\d+)\s*")
_PRETTY_DIGIT = re.compile(r"\[\s*([+-]?\d+)\s*\]")


def parse_digits(text: str) -> LaurentDigits:
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if s.startswith("{"):
        return _parse_compact(s, text, offset)
    if s.startswith("["):
        return _parse_pretty(s, text, offset)
    raise ParseError("expected '{' or '['", text, offset)


def _parse_compact(s: str, text: str, offset: int) -> LaurentDigits:
    if not s.endswith("}"):
        raise ParseError("missing closing '}'", text, offset + len(s))
    body = s[1:-1]
    if not body.strip():
        return ZERO
    coeffs: dict[int, int] = {}
    pos = offset + 1
    for chunk in body.split(","):
        m = _COMPACT_ITEM.fullmatch(chunk)
        if m is None:
            raise ParseError("malformed 'exponent:digit' entry", text, pos)
        k, a = int(m.group(1)), int(m.group(2))
        if k in coeffs:
            raise ParseError(f"duplicate exponent {k}", text, pos)
        coeffs[k] = a
        pos += len(chunk) + 1
    return LaurentDigits(coeffs)


def _parse_pretty(s: str, text: str, offset: int) -> LaurentDigits:
    before: list[int] = []
    after: list[int] = []
    target = before
    i = 0
    while i < len(s):
        if s[i] == ".":
            if target is after:
                raise ParseError("second radix dot", text, offset + i)
            target = after
            i += 1
            continue
        m = _PRETTY_DIGIT.match(s, i)
        if m is None:
            raise ParseError("expected '[digit]' or '.'", text, offset + i)
        target.append(int(m.group(1)))
        i = m.end()
    if not before:
        raise ParseError("no digit before the radix position", text, offset)
    coeffs = {len(before) - 1 - i: a for i, a in enumerate(before)}
    coeffs.update({-1 - i: a for i, a in enumerate(after)})
    return LaurentDigits(coeffs)
