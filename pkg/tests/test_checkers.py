import random

import pytest

from semigrid.automata import REJECT, convolve
from semigrid.checkers import (
    compile_addition_checker,
    compile_comparison_checker,
    compile_mulconst_checker,
    compile_school_adder,
    constant_track_checker,
    school_trace,
    tableau_letters,
)
from semigrid.digits import LaurentDigits
from semigrid.errors import ZeroDenominator
from semigrid.grids import grid_by_name
from semigrid.mulconst import mul_by_poly
from semigrid.normalize import normalize
from semigrid.sign import compare, equal


def _normal(g, rng, lo=-3, hi=3):
    D = g.digit_bound
    return LaurentDigits({k: rng.randint(-D, D) for k in range(lo, hi)})


@pytest.mark.parametrize("rows, states, verdict", [
    (("# 2 3 5 8. 2 2 5", "# 9 1 1 2. # # #", "1 1 4 7 0. 2 2 5"), "n c n n c n n n n", True),
    (("3 3 3 3. 3 3 #", "# # 2 2. 2 2 2", "# 1 5 5. 5 5 2"), "i i n n n n n n", False),
    (("9 9 1 2 3. 4 5 6", "# # 9 8 7. 6 5 4", "0 0 1 1 1. 1 1 #"), "c c c c c c c c n", False),
])
def test_school_tableaux(rows, states, verdict):
    got, accepted = school_trace(rows)
    assert got == states.split()
    assert accepted is verdict


def test_tableau_columns_are_aligned_at_the_dot():
    cols = tableau_letters(["1 2. 5", "# 3. #"])
    assert cols == [(5, "#"), (2, 3), (1, "#")]


def test_school_adder_on_random_sums(rng):
    A = compile_school_adder(10)
    for _ in range(200):
        x, y = rng.randrange(10**6), rng.randrange(10**6)
        z = x + y + (rng.random() < 0.3)
        word = tableau_letters([str(x), str(y), str(z)])
        assert A.accepts(word) == (z == x + y)


def test_addition_checker_matches_oracle(grid, rng):
    A = compile_addition_checker(grid)
    for _ in range(60):
        x, y = _normal(grid, rng), _normal(grid, rng)
        z = normalize(grid, x + y) if rng.random() < 0.5 else _normal(grid, rng)
        assert A.accepts(convolve([x, y, z]).letters()) == equal(grid, normalize(grid, x + y), z)


@pytest.mark.parametrize("rel, test", [("lt", lambda c: c < 0), ("le", lambda c: c <= 0), ("ge", lambda c: c >= 0)])
def test_comparison_checkers(rel, test):
    g = grid_by_name("sqrt2half")
    A = compile_comparison_checker(g, rel)
    rng = random.Random(3)
    for _ in range(100):
        x, y = _normal(g, rng), _normal(g, rng)
        if rng.random() < 0.2:
            y = x
        assert A.accepts(convolve([x, y]).letters()) == test(compare(g, x, y))


def test_mulconst_checker_three_halves():
    g = grid_by_name("d10")
    A = compile_mulconst_checker(g, LaurentDigits({0: 3}), LaurentDigits({0: 2}))
    x = LaurentDigits({0: 1, -1: 2})
    y = LaurentDigits({0: 1, -1: 8})
    assert A.accepts(convolve([x, y]).letters())
    assert not A.accepts(convolve([x, x]).letters())


def test_mulconst_checker_against_exact_product(rng):
    g = grid_by_name("sqrt3half")
    gamma = LaurentDigits({0: 1, -1: -1})
    A = compile_mulconst_checker(g, gamma)
    for _ in range(30):
        x = _normal(g, rng, -2, 1)
        y = mul_by_poly(g, gamma, x)
        assert A.accepts(convolve([x, y]).letters())


def test_zero_denominator():
    g = grid_by_name("sqrt2half")
    with pytest.raises(ZeroDenominator):
        compile_mulconst_checker(g, LaurentDigits({0: 1}), LaurentDigits({0: 1, -1: -4, -2: 2}))


def test_constant_track_pins_value_and_dot():
    K = LaurentDigits({1: 2, -1: 1})
    C = constant_track_checker(K, 0, 1, range(-3, 4))
    good = convolve([K]).letters()
    assert C.accepts(good)
    assert not C.accepts([(2,), (0,), (1,), "."])
    assert not C.accepts(convolve([LaurentDigits({1: 2})]).letters())
    assert C.label(C.final_state([(1,)])) == REJECT and C.is_dead(C.final_state([(1,)]))
