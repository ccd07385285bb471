import itertools

import pytest
from hypothesis import given, strategies as st

from semigrid.automata import (
    ACCEPT,
    DOT,
    PAD,
    REJECT,
    SyncDFA,
    convolve,
    determinize,
    dfa_equivalent,
    dfa_minimize,
    dfa_product,
    export_dot,
    find_counterexample,
    is_convolution,
    project_track,
    track_alphabet,
    unconvolve,
)
from semigrid.checkers import compile_addition_checker, compile_school_adder, linear_checker
from semigrid.digits import LaurentDigits
from semigrid.errors import AlphabetMismatch, StateExplosion
from semigrid.grids import grid_by_name
from semigrid.normalize import normalize

from conftest import digit_vectors


def parity_dfa(symbols=(0, 1)):
    """Accepts words with an even number of 1s on track 0."""
    return SyncDFA(
        track_alphabet(symbols, 1),
        0,
        lambda s, a: s if a == DOT or a[0] != 1 else 1 - s,
        lambda s: ACCEPT if s == 0 else REJECT,
        name="parity",
    )


def test_convolution_pads_flanks_and_marks_the_dot():
    w = convolve([LaurentDigits({1: 2}), LaurentDigits({-1: 3})])
    assert w.top == 1 and w.bottom == -1
    assert w.symbols == ((2, PAD), (PAD, PAD), (PAD, 3))
    assert w.letters() == [(2, PAD), (PAD, PAD), DOT, (PAD, 3)]
    assert is_convolution(w.letters(), 2)
    assert not is_convolution([(1,), (PAD,), (1,), DOT], 1)


@given(st.lists(digit_vectors(9), min_size=1, max_size=3))
def test_convolution_round_trip(vecs):
    w = convolve(vecs)
    assert unconvolve(w, len(vecs)) == vecs


def test_memoized_run():
    A = parity_dfa()
    assert A.accepts([(1,), (1,), DOT, (0,)])
    assert not A.accepts([(1,)])
    assert A.explored() >= 1


def test_unknown_letter():
    with pytest.raises(AlphabetMismatch):
        parity_dfa().run([(7,)])


def test_state_cap():
    counter = SyncDFA(track_alphabet((0,), 1), 0, lambda s, a: s + 1, lambda s: ACCEPT, state_cap=5)
    with pytest.raises(StateExplosion):
        counter.reachable()


def test_product_and_or():
    A = parity_dfa()
    B = SyncDFA(A.alphabet, False, lambda s, a: s or (a != DOT and a[0] == 1), lambda s: ACCEPT if s else REJECT)
    both = dfa_product(A, B, "and")
    either = dfa_product(A, B, "or")
    assert both.accepts([(1,), (1,)]) and not both.accepts([(0,)])
    assert either.accepts([(0,)]) and either.accepts([(1,)])


def test_product_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        dfa_product(parity_dfa(), parity_dfa((0, 1, 2)))


def test_minimize_school_adder_has_three_states():
    M = dfa_minimize(compile_school_adder(10))
    assert len(M.reachable()) == 3
    assert dfa_equivalent(M, compile_school_adder(10))


def test_counterexample_is_shortest():
    A = parity_dfa()
    B = SyncDFA(A.alphabet, 0, lambda s, a: s, lambda s: ACCEPT)
    w = find_counterexample(A, B)
    assert w == ((1,),)


def test_projection_of_addition_is_total_in_d2():
    # exists z: x + y = z holds for every pair, so the projection accepts all
    # convolutions of (x, y)
    g = grid_by_name("d2")
    A = compile_addition_checker(g)
    D = determinize(project_track(A, 2), pad_prefix=True, pad_suffix=True)
    for xs in itertools.product(range(-1, 2), repeat=2):
        for ys in itertools.product(range(-1, 2), repeat=2):
            x = LaurentDigits.from_sequence(0, xs)
            y = LaurentDigits.from_sequence(1, ys)
            assert D.accepts(convolve([x, y]).letters())


def test_multiples_of_three_in_decimal():
    g = grid_by_name("d10")
    triple = linear_checker(g, [LaurentDigits({0: 1}), LaurentDigits({0: -3})], "eq")
    M = determinize(project_track(triple, 1), pad_prefix=True, pad_suffix=True)
    assert M.accepts(convolve([LaurentDigits({0: 1, -1: 2})]).letters())
    assert not M.accepts(convolve([LaurentDigits({0: 1, -2: 1})]).letters())
    for n in range(-40, 41):
        x = normalize(g, LaurentDigits({-1: n}))
        assert M.accepts(convolve([x]).letters()) == (n % 3 == 0)


def test_dot_export_is_stable():
    A = compile_school_adder(10)
    text = export_dot(A)
    assert text.splitlines()[0] == "// school[10]: 3 states"
    assert text == export_dot(compile_school_adder(10))
    assert "doublecircle" in text and "start ->" in text
