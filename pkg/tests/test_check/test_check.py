#!/usr/bin/env python3

"""
Parameter checking tests
"""

from kpspanner.check import (
    checkepsilon,
    checkinteger,
    checknumeric,
    checkpositive,
)


def test_checknumeric_required_none():
    """
    checknumeric should raise ValueError if required value is None
    """
    try:
        checknumeric("myparam", None, required=True)
        assert False, "Should not have passed"
    except ValueError as e:
        assert str(e) == "myparam is a required parameter"


def test_checknumeric_optional_none():
    """
    checknumeric should return None if optional value is None
    """
    assert checknumeric("myparam", None, required=False) is None


def test_checknumeric_int():
    """
    checknumeric should cast int to float
    """
    v = checknumeric("myparam", 1234)
    assert v == 1234.0
    assert isinstance(v, float), "Should cast to float"


def test_checknumeric_str():
    """
    checknumeric should cast str to float
    """
    v = checknumeric("myparam", "123.45")
    assert v == 123.45
    assert isinstance(v, float), "Should cast to float"


def test_checknumeric_bool():
    """
    checknumeric should refuse booleans
    """
    try:
        checknumeric("myparam", True)
        assert False, "Should not have passed"
    except TypeError as e:
        assert str(e) == "myparam must be numeric, not a bool"


def test_checknumeric_nan():
    """
    checknumeric should refuse non-finite values
    """
    try:
        checknumeric("myparam", float("nan"))
        assert False, "Should not have passed"
    except ValueError as e:
        assert str(e) == "myparam must be finite, got nan"


def test_checkpositive_zero():
    """
    checkpositive should refuse zero
    """
    try:
        checkpositive("s", 0)
        assert False, "Should not have passed"
    except ValueError as e:
        assert str(e) == "s must be positive, got 0.0"


def test_checkinteger_minimum():
    """
    checkinteger should enforce the lower bound
    """
    try:
        checkinteger("n", 0, minimum=1)
        assert False, "Should not have passed"
    except ValueError as e:
        assert str(e) == "n must be at least 1, got 0"


def test_checkinteger_float():
    """
    checkinteger should refuse floats rather than truncate them
    """
    try:
        checkinteger("n", 2.5)
        assert False, "Should not have passed"
    except TypeError as e:
        assert str(e) == "n must be an integer, got 2.5"


def test_checkinteger_str():
    """
    checkinteger should parse integer strings
    """
    assert checkinteger("n", "42") == 42


def test_checkepsilon_range():
    """
    checkepsilon should accept only the open interval (0, 1)
    """
    assert checkepsilon(0.5) == 0.5
    for bad in (0, 1, 1.5, -0.1):
        try:
            checkepsilon(bad)
            assert False, "Should not have passed for %r" % bad
        except ValueError as e:
            assert str(e) == "epsilon must be in the range (0, 1)"
