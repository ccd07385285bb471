from hypothesis import given, strategies as st

from semigrid.digits import LaurentDigits
from semigrid.grids import SHIPPED_GRIDS, grid_by_name
from semigrid.normalize import is_normal, normalize
from semigrid.oracle import sign_at

from conftest import digit_vectors


def test_known_reduction():
    g = grid_by_name("sqrt2half")
    assert normalize(g, LaurentDigits({0: 5})) == LaurentDigits({1: 1, 0: 1, -1: 2})


def test_decimal_carry():
    g = grid_by_name("d10")
    assert normalize(g, LaurentDigits({0: 15})) == LaurentDigits({1: 1, 0: 5})


@given(st.sampled_from(SHIPPED_GRIDS), st.data())
def test_value_preserved_bound_respected_idempotent(name, data):
    g = grid_by_name(name)
    p = data.draw(digit_vectors(3 * g.input_bound))
    q = normalize(g, p, check_norm=True)
    assert is_normal(g, q)
    assert sign_at(g, q - p) == 0
    assert normalize(g, q) == q


def test_normal_input_untouched(grid):
    p = LaurentDigits({0: grid.digit_bound, -3: -grid.digit_bound})
    assert normalize(grid, p) is p
