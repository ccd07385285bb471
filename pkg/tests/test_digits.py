import pytest
from hypothesis import given, strategies as st

from semigrid.digits import LaurentDigits, format_digits, mul_poly, parse_digits
from semigrid.errors import ParseError

from conftest import digit_vectors

vectors = digit_vectors(20)


def test_zero_vector_formats_as_empty_braces():
    assert format_digits(LaurentDigits()) == "{}"
    assert parse_digits("{}") == LaurentDigits()


def test_compact_drops_zeros_and_sorts_descending():
    p = LaurentDigits({-2: 3, 1: -1, 0: 0})
    assert format_digits(p) == "{1:-1,-2:3}"
    assert p.hi == 1 and p.lo == -2 and len(p) == 2


def test_pretty_form():
    p = parse_digits("{0:15,-1:3}")
    assert format_digits(p, "pretty") == "[15].[3]"
    assert format_digits(LaurentDigits({2: 1}), "pretty") == "[1][0][0]"
    assert parse_digits("[1][0].[-2]") == LaurentDigits({1: 1, -1: -2})


@pytest.mark.parametrize("text, pos", [("{0:", 3), ("{a:1}", 1), ("[1].[2", 4), ("(1)", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_digits(text)
    assert exc.value.position == pos


def test_duplicate_exponent_rejected():
    with pytest.raises(ParseError):
        parse_digits("{0:1,0:2}")


@given(vectors)
def test_compact_round_trip(p):
    assert parse_digits(format_digits(p)) == p


@given(vectors)
def test_pretty_round_trip(p):
    assert parse_digits(format_digits(p, "pretty")) == p


@given(vectors, vectors)
def test_addition_commutes(p, q):
    assert p + q == q + p


@given(vectors)
def test_negation_is_an_involution(p):
    assert -(-p) == p
    assert p - p == LaurentDigits()


@given(vectors, vectors, st.integers(-5, 5))
def test_product_commutes_and_shifts(p, q, k):
    assert mul_poly(p, q) == mul_poly(q, p)
    assert mul_poly(p, LaurentDigits({k: 1})) == p.shift(k)


def test_vectors_are_hashable_values():
    assert hash(LaurentDigits({0: 1})) == hash(LaurentDigits([(0, 1)]))
    with pytest.raises(AttributeError):
        LaurentDigits({0: 1}).foo = 3
