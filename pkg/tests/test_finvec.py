from fractions import Fraction

import pytest
from hypothesis import given

from symba.errors import ValidationError
from symba.finvec import FinVec, format_scalar, ones, parse_scalar

from conftest import finvecs


def test_parse_scalar_forms():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("-7") == Fraction(-7)
    assert parse_scalar("0.25") == Fraction(1, 4)
    assert parse_scalar(5) == Fraction(5)
    assert parse_scalar(0.5) == 0.5 and isinstance(parse_scalar(0.5), float)


@pytest.mark.parametrize("bad", ["1/0", "abc", "1//2", "", "nan"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(ValidationError):
        parse_scalar(bad)


def test_format_scalar():
    assert format_scalar(Fraction(6, 4)) == "3/2"
    assert format_scalar(Fraction(2)) == "2"
    assert format_scalar(0.1) == "0.10000000000000001"
    assert format_scalar(float("inf")) == "inf"


def test_zero_entries_dropped():
    v = FinVec({"a": 1, "b": 0, "c": "0/5"})
    assert v.support == {"a"}
    assert v.get("b") == 0


def test_parse_cli_vector():
    v = FinVec.parse("a=2, b=1/3")
    assert v == {"a": 2, "b": Fraction(1, 3)}
    for bad in ("a=1,a=2", "=3", "a"):
        with pytest.raises(ValidationError):
            FinVec.parse(bad)


def test_arithmetic_cancels_to_empty():
    v = FinVec({"a": 1, "b": -2})
    assert len(v - v) == 0
    assert (v + v) == v.scale(2)
    assert ones(3).l1() == 3


@given(finvecs())
def test_json_round_trip(v):
    assert FinVec.from_json(v.to_json()) == v


@given(finvecs())
def test_sorted_abs_is_rearrangement(v):
    a = v.sorted_abs()
    assert a == sorted((abs(x) for x in v.values()), reverse=True)
    assert all(x > 0 for x in a)
