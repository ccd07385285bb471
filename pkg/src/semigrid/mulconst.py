"""Multiplication of a digit vector by a fixed grid element.

Only one factor may vary: the other is a constant Laurent polynomial in
``u``. The product is the exact polynomial product followed by
normalization, i.e. shifts, negations and repeated additions.
"""

from __future__ import annotations

from .digits import LaurentDigits, mul_poly
from .normalize import normalize

__all__ = ["mul_by_poly", "mul_by_grid_constant", "mul_by_int"]


def mul_by_poly(g, gamma: LaurentDigits, x: LaurentDigits) -> LaurentDigits:
    return normalize(g, mul_poly(gamma, x))


def mul_by_grid_constant(g, gamma: LaurentDigits, x: LaurentDigits) -> LaurentDigits:
    """``gamma`` is an element of the grid in normal form."""
    if gamma.max_abs() > g.digit_bound:
        raise ValueError(f"constant {gamma} is not in normal form for grid {g.name}")
    return mul_by_poly(g, gamma, x)


def mul_by_int(g, n: int, x: LaurentDigits) -> LaurentDigits:
    return normalize(g, x.scale(n))
