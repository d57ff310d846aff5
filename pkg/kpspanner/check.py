#!/usr/bin/env python3

"""
Parameter checking.  Values arriving from the command line, configuration
files or callers are coerced here so the algorithms can assume sane numbers.
"""

import math
import numbers


def checknumeric(name, value, required=False):
    """
    Assert the value is a finite numeric value, or throw a ValueError.
    """
    if value is None:
        if required:
            raise ValueError("%s is a required parameter" % name)
        else:
            return None

    if isinstance(value, bool):
        raise TypeError("%s must be numeric, not a bool" % name)

    # This will throw ValueError if it can't be converted
    value = float(value)
    if not math.isfinite(value):
        raise ValueError("%s must be finite, got %r" % (name, value))
    return value


def checkpositive(name, value, required=False):
    """
    Assert the value is a strictly positive real.
    """
    value = checknumeric(name, value, required=required)
    if (value is not None) and (value <= 0):
        raise ValueError("%s must be positive, got %r" % (name, value))
    return value


def checkinteger(name, value, minimum=None, required=False):
    """
    Assert the value is an integer, optionally bounded below.
    """
    if value is None:
        if required:
            raise ValueError("%s is a required parameter" % name)
        else:
            return None

    if isinstance(value, bool) or not isinstance(
        value, (numbers.Integral, str)
    ):
        raise TypeError("%s must be an integer, got %r" % (name, value))

    value = int(value)
    if (minimum is not None) and (value < minimum):
        raise ValueError(
            "%s must be at least %d, got %d" % (name, minimum, value)
        )
    return value


def checkepsilon(value):
    """
    Assert epsilon lies in the open interval (0, 1).
    """
    value = checknumeric("epsilon", value, required=True)
    if not (0 < value < 1):
        raise ValueError("epsilon must be in the range (0, 1)")
    return value
