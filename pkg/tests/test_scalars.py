from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from silting_lab.scalars import I, Scalar, coeff, format_scalar, inverse, is_real, parse_scalar, scalar_arith

rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))
gauss = st.builds(lambda a, b: coeff(Scalar(a, b)), rationals, rationals)


def test_coeff_collapses_real_complex():
    assert isinstance(coeff(Scalar(3, 0)), type(mpq(1)))
    assert coeff(Scalar(0, 1)) == I
    assert I * I == -1


@pytest.mark.parametrize("text,value", [
    ("3", mpq(3)), ("-2/4", mpq(-1, 2)), ("i", I), ("-i", -I),
    ("1/2+3*i", Scalar(mpq(1, 2), 3)), ("2/3*i", Scalar(0, mpq(2, 3))),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


def test_format_scalar():
    assert format_scalar(mpq(4)) == "4"
    assert format_scalar(mpq(-1, 3)) == "-1/3"
    assert format_scalar(Scalar(1, -2)) == "1-2*i"
    assert format_scalar(I) == "1*i"


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        inverse(coeff(0))


def test_scalar_arith_ops():
    a, b = mpq(1, 2), Scalar(0, 2)
    assert scalar_arith(a, b, "add") == Scalar(mpq(1, 2), 2)
    assert scalar_arith(a, b, "mul") == I
    assert scalar_arith(b, None, "inv") == Scalar(0, mpq(-1, 2))
    assert scalar_arith(a, b, "div") == Scalar(0, mpq(-1, 4))


@settings(max_examples=200)
@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * inverse(a) == 1


@settings(max_examples=200)
@given(gauss)
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == a


@settings(max_examples=100)
@given(rationals)
def test_real_matches_fraction(a):
    assert is_real(a)
    f = Fraction(int(a.numerator), int(a.denominator))
    assert coeff(a) * 3 == mpq(f.numerator * 3, f.denominator)
