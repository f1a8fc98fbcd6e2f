import numpy as np
import pytest
from hypothesis import given

from kaprekar.bulk import non_repdigits, param_rows, step_values
from kaprekar.checks import image_check
from kaprekar.core import DigitNumber, kaprekar_step, make_number, params
from kaprekar.parametric import (
    FamilyTag,
    InvalidParams,
    ParamVector,
    apply_f,
    check_bw,
    class_count,
    classify,
    enumerate_classes,
    family_tags,
)

from test_core import numbers


def test_worked_images():
    assert str(apply_f(ParamVector.parse("632", 6))) == "631764"
    assert str(apply_f(ParamVector.parse("550", 6))) == "549945"
    assert str(apply_f(ParamVector.parse("75421", 11))) == "75420987543"


@pytest.mark.parametrize(
    "alphas, width",
    [((0, 0, 0), 6), ((3, 5, 1), 6), ((10, 0, 0), 6), ((5, 4), 6), ((5, -1), 4), ((1,), 1)],
)
def test_invalid_param_vectors(alphas, width):
    with pytest.raises(InvalidParams):
        ParamVector(alphas, width)


def test_classify():
    assert str(classify(ParamVector.parse("632", 6))) == "F1/even"
    assert str(classify(ParamVector.parse("630", 6))) == "F2(3)/even"
    assert str(classify(ParamVector.parse("600", 7))) == "F3/odd"
    assert str(classify(ParamVector.parse("5", 3))) == "F3/odd"
    assert [str(t) for t in family_tags(8)] == ["F3/even", "F2(3)/even", "F2(4)/even", "F1/even"]


def test_family_tag_validation():
    with pytest.raises(ValueError):
        FamilyTag("F2", "even")
    with pytest.raises(ValueError):
        FamilyTag("F4", "odd")
    with pytest.raises(ValueError):
        FamilyTag("F2", "even", 4).check_width(6)


@pytest.mark.parametrize("width, expected", [(2, 9), (3, 9), (4, 54), (5, 54), (6, 219), (7, 219), (8, 714)])
def test_class_counts(width, expected):
    assert class_count(width) == expected == len(enumerate_classes(width))


def test_classes_sorted_descending():
    classes = enumerate_classes(6)
    assert [str(c) for c in classes[:3]] == ["999", "998", "997"]
    assert classes == sorted(classes, key=lambda c: c.alphas, reverse=True)


@pytest.mark.parametrize("width", range(2, 11))
def test_every_image_has_its_family_shape(width):
    for alpha in enumerate_classes(width):
        assert check_bw(apply_f(alpha), classify(alpha))


def test_shape_rejections():
    assert check_bw(make_number("631765", 6), FamilyTag("F1", "even")).failed_condition == "sum9"
    assert not check_bw(make_number("549954", 6), FamilyTag("F1", "even"))


# width 7 runs in the acceptance suite
@pytest.mark.parametrize("width", range(2, 7))
def test_image_is_step_exhaustive(width):
    assert image_check(non_repdigits(width), width) == (0, 0)


def test_image_is_step_sampled():
    rng = np.random.default_rng(7)
    for width in range(8, 13):
        values = rng.integers(0, 10 ** width, size=20_000, dtype=np.int64)
        digits = param_rows(values, width)
        values = values[digits.any(axis=1)]
        assert image_check(values, width) == (0, 0)


def test_bulk_matches_scalar():
    values = non_repdigits(4)[::97]
    stepped = step_values(values, 4)
    for v, s in zip(values, stepped):
        assert int(kaprekar_step(make_number(str(v), 4))) == s


@given(numbers())
def test_image_of_params_is_step(n):
    assert apply_f(params(n)) == kaprekar_step(n)


@given(numbers())
def test_params_in_range_and_sorted(n):
    alpha = params(n)
    assert alpha.h == n.width // 2
    assert 1 <= alpha[0] <= 9
    assert list(alpha.alphas) == sorted(alpha.alphas, reverse=True)


@given(numbers(max_width=14))
def test_representative_has_the_class(n):
    alpha = params(n)
    assert params(alpha.representative()) == alpha
    assert isinstance(alpha.representative(), DigitNumber)
