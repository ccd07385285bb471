from fractions import Fraction

import pytest

from semigrid.digits import LaurentDigits
from semigrid.grids import grid_by_name
from semigrid.oracle import approx_value, sign_at, sturm_root_count, u_bracket


def test_sturm_counts_roots_of_x2_minus_2():
    assert sturm_root_count([1, 0, -2], Fraction(0), Fraction(2)) == 1
    assert sturm_root_count([1, 0, -2], Fraction(-2), Fraction(2)) == 2
    assert sturm_root_count([1, 0, -2], Fraction(2), Fraction(3)) == 0


def test_bracket_narrows_and_contains_root():
    lo, hi = u_bracket((1, -4, 2), Fraction(341, 100), Fraction(342, 100), 10)
    assert hi - lo < Fraction(1, 10**20)
    f = lambda x: x * x - 4 * x + 2
    assert f(lo) * f(hi) <= 0


def test_values_of_known_elements():
    g = grid_by_name("sqrt2half")
    lo, hi = approx_value(g, LaurentDigits({0: 2, -1: -2}), Fraction(1, 10**15))
    assert hi - lo <= Fraction(1, 10**15)
    assert lo * lo <= 2 <= hi * hi
    half = approx_value(g, LaurentDigits({-1: 2, -2: -1}), Fraction(1, 10**12))
    assert half[0] <= Fraction(1, 2) <= half[1]


def test_exact_zero_detection():
    g = grid_by_name("cbrt7")
    assert sign_at(g, LaurentDigits({0: 1, -1: -12, -2: 6, -3: -1})) == 0
    assert sign_at(g, LaurentDigits({0: 1, -1: -12, -2: 6, -3: -1, -40: 1})) == 1


def test_decimal_grid_exact_rational():
    g = grid_by_name("d10")
    assert sign_at(g, LaurentDigits({0: 1, -1: -10})) == 0
    assert approx_value(g, LaurentDigits({0: 1, -1: 2}), "1e-9")[0] <= Fraction(12, 10)


def test_precision_must_be_positive():
    with pytest.raises(ValueError):
        approx_value(grid_by_name("d2"), LaurentDigits({0: 1}), 0)


def test_tiny_differences_are_resolved():
    g = grid_by_name("sqrt3half")
    p = LaurentDigits({5: 1, -30: 1})
    q = LaurentDigits({5: 1})
    assert sign_at(g, p - q) == 1
    assert sign_at(g, q - p) == -1
