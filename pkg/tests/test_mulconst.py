import pytest
from hypothesis import given, strategies as st

from semigrid.digits import LaurentDigits
from semigrid.grids import SHIPPED_GRIDS, const_digits, grid_by_name
from semigrid.mulconst import mul_by_grid_constant, mul_by_int, mul_by_poly
from semigrid.oracle import sign_at
from semigrid.digits import mul_poly

from conftest import digit_vectors


@given(st.sampled_from(SHIPPED_GRIDS), st.data(), st.integers(-12, 12))
def test_integer_multiples(name, data, n):
    g = grid_by_name(name)
    x = data.draw(digit_vectors(g.digit_bound, max_size=5))
    y = mul_by_int(g, n, x)
    assert y.max_abs() <= g.digit_bound
    assert sign_at(g, y - x.scale(n)) == 0


def test_half_of_root_three():
    g = grid_by_name("sqrt3half")
    y = mul_by_grid_constant(g, const_digits(g, "half"), const_digits(g, "c"))
    assert y == LaurentDigits({0: 1, -1: -1})


@given(st.data())
def test_product_is_exact(data):
    g = grid_by_name("cbrt7")
    gamma = data.draw(digit_vectors(g.digit_bound, -2, 2, 3))
    x = data.draw(digit_vectors(g.digit_bound, -3, 3, 5))
    assert sign_at(g, mul_by_poly(g, gamma, x) - mul_poly(gamma, x)) == 0


def test_constant_must_be_normal():
    g = grid_by_name("d10")
    with pytest.raises(ValueError):
        mul_by_grid_constant(g, LaurentDigits({0: 12}), LaurentDigits({0: 1}))
