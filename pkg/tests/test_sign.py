import itertools
import random

import pytest
from hypothesis import given, strategies as st

from semigrid.automata import DOT, PAD
from semigrid.digits import LaurentDigits
from semigrid.errors import InputBoundExceeded
from semigrid.grids import SHIPPED_GRIDS, grid_by_name
from semigrid.oracle import sign_at
from semigrid.sign import Ordering, Sign, compare, compile_sign_dfa, equal, sign_engine, sign_of

from conftest import digit_vectors


def _random(g, rng, lo=-10, hi=10):
    B = g.input_bound
    return LaurentDigits({k: rng.randint(-B, B) for k in range(lo, hi)})


def test_matches_oracle_on_random_vectors(grid, rng):
    for _ in range(300):
        p = _random(grid, rng)
        assert int(sign_of(grid, p)) == sign_at(grid, p)


@given(st.sampled_from(SHIPPED_GRIDS), st.data())
def test_sign_is_odd(name, data):
    g = grid_by_name(name)
    p = data.draw(digit_vectors(g.input_bound))
    assert sign_of(g, -p) == -sign_of(g, p)


@given(st.sampled_from(SHIPPED_GRIDS), st.data(), st.integers(-8, 8))
def test_sign_is_shift_invariant(name, data, k):
    g = grid_by_name(name)
    p = data.draw(digit_vectors(g.input_bound))
    assert sign_of(g, p.shift(k)) == sign_of(g, p)


def test_examples():
    g = grid_by_name("sqrt2half")
    assert sign_of(g, LaurentDigits({0: 5})) == Sign.POSITIVE
    assert compare(g, LaurentDigits({-1: 2, -2: -1}), LaurentDigits({0: 2, -1: -2})) == Ordering.LESS
    assert equal(g, LaurentDigits({0: 1, -1: -4, -2: 2}), LaurentDigits())
    assert str(Sign.POSITIVE) == "Positive" and str(Ordering.LESS) == "Less"


def test_bound_enforced():
    g = grid_by_name("sqrt2half")
    with pytest.raises(InputBoundExceeded):
        sign_of(g, LaurentDigits({0: g.input_bound + 1}))


def test_scaled_engine_handles_wide_operands(grid, rng):
    eng = sign_engine(grid, 7 * grid.input_bound)
    B = eng.operand_bound
    for _ in range(100):
        p = LaurentDigits({k: rng.randint(-B, B) for k in range(-6, 6)})
        assert int(sign_of(grid, p, engine=eng)) == sign_at(grid, p)


def test_trace_records_each_step():
    g = grid_by_name("d10")
    trace = []
    sign_of(g, LaurentDigits({1: 3, 0: -2}), trace=trace)
    assert trace and all(len(t) == 2 for t in trace)


@pytest.mark.parametrize("name", SHIPPED_GRIDS)
def test_overshoot_decides_with_the_leading_sign(name):
    g = grid_by_name(name)
    rng = random.Random(5)
    seen = 0
    for _ in range(400):
        p = _random(g, rng)
        trace = []
        s = sign_of(g, p, trace=trace)
        lead, last = trace[-1]
        if isinstance(last, Sign) and last != Sign.ZERO:
            seen += 1
            assert (lead > 0) - (lead < 0) == int(s)
    assert seen > 0


def test_sign_dfa_exhaustive_short_words():
    g = grid_by_name("sqrt2half")
    A = compile_sign_dfa(g)
    D = g.digit_bound
    for n in range(5):
        for word in itertools.product(range(-D, D + 1), repeat=n):
            p = LaurentDigits({n - 1 - i: a for i, a in enumerate(word)})
            assert A.run([(a,) for a in word]) == sign_of(g, p)


def test_sign_dfa_ignores_dot_and_reads_pad_as_zero():
    g = grid_by_name("d10")
    A = compile_sign_dfa(g)
    assert A.run([(PAD,), (1,), DOT, (-9,)]) == Sign.POSITIVE
    assert A.run([(1,), (-9,), (-9,), DOT, (-9,), (-9,), (-10,)]) == Sign.ZERO
    assert A.accepts([]) and A.accept_label == Sign.ZERO
