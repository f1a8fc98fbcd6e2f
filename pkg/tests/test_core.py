import pytest
from hypothesis import given, strategies as st

from kaprekar.core import (
    DigitNumber,
    KaprekarError,
    NonDigit,
    RepdigitInput,
    TooWide,
    all_numbers,
    iterate,
    kaprekar_step,
    make_number,
    orbit,
    param_tuple,
    sort_pair,
    subtract_digits,
)


@st.composite
def numbers(draw, min_width=2, max_width=16):
    w = draw(st.integers(min_width, max_width))
    digits = draw(st.lists(st.integers(0, 9), min_size=w, max_size=w).filter(lambda d: len(set(d)) > 1))
    return DigitNumber(tuple(digits))


def test_worked_step():
    n = make_number("83246529", 8)
    assert str(kaprekar_step(n)) == "76308633"
    assert str(iterate(n, 2)) == "84326652"
    assert str(iterate(make_number("4687437", 7), 7)) == "8639532"


def test_leading_zeros_kept():
    assert str(kaprekar_step(make_number("3524", 4))) == "3087"
    assert str(kaprekar_step(make_number("3087", 4))) == "8352"
    assert str(make_number("9", 3)) == "009"
    assert str(kaprekar_step(make_number("9", 3))) == "891"


@pytest.mark.parametrize(
    "text, width, exc",
    [("1111", 4, RepdigitInput), ("12a4", 4, NonDigit), ("", 3, NonDigit), ("12345", 4, TooWide), ("1", 1, KaprekarError)],
)
def test_invalid_input(text, width, exc):
    with pytest.raises(exc):
        make_number(text, width)


def test_sort_pair_and_subtraction():
    pair = sort_pair(make_number("83246529", 8))
    assert pair.x == "98654322" and pair.y == "22345689"
    assert subtract_digits((1, 0, 0), (0, 0, 1)) == (0, 9, 9)
    with pytest.raises(ValueError):
        subtract_digits((0, 1), (1, 0))


def test_params_of_worked_example():
    assert param_tuple(make_number("83246529", 8)) == (7, 6, 3, 1)
    assert param_tuple(make_number("17487561", 8)) == (7, 6, 3, 1)


def test_orbit_terminals():
    o = orbit(make_number("3524", 4))
    assert o.terminal == "fixed-point" and str(o.attractor) == "6174" and o.cycle_length == 1
    o = orbit(make_number("840852", 6))
    assert o.terminal == "entered-cycle" and o.cycle_length == 7
    o = orbit(make_number("840852", 6), limit=2)
    assert o.terminal == "truncated" and o.attractor is None


def test_all_numbers_count():
    assert sum(1 for _ in all_numbers(3)) == 990


@given(numbers())
def test_step_keeps_width_and_is_multiple_of_nine(n):
    m = kaprekar_step(n)
    assert m.width == n.width
    assert m.is_multiple_of_nine()


@given(numbers())
def test_step_depends_only_on_digit_multiset(n):
    shuffled = DigitNumber(tuple(sorted(n.digits)))
    assert kaprekar_step(shuffled) == kaprekar_step(n)


@given(numbers(max_width=12))
def test_step_matches_integer_arithmetic(n):
    desc = int("".join(map(str, sorted(n.digits, reverse=True))))
    asc = int("".join(map(str, sorted(n.digits))))
    assert int(kaprekar_step(n)) == desc - asc


@given(numbers(max_width=10), st.integers(0, 6), st.integers(0, 6))
def test_iterate_composes(n, a, b):
    assert iterate(iterate(n, a), b) == iterate(n, a + b)
