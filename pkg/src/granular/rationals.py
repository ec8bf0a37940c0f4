"""Exact unit-interval rationals and their wire format."""

from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

from .errors import InputError

Number = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def parse_rational(value: Number) -> Fraction:
    """
    Parse a rational from its wire form.

    Args:
        value: "p/q" string, integer or Fraction

    Returns:
        Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"Inexact value {value!r}; use a p/q string")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"Not a rational: {value!r}") from e


def to_unit(value: Number) -> Fraction:
    """Parse a value and require it to lie in [0, 1]."""
    result = parse_rational(value)
    if result < 0 or result > 1:
        raise InputError(f"{value!r} is outside [0, 1]")
    return result


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q" (integers keep a /1 denominator)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@lru_cache(maxsize=4096)
def ratio(numerator: int, denominator: int, empty: Fraction = ONE) -> Fraction:
    """Cardinality quotient with the convention that 0/0 gives `empty`."""
    if denominator == 0:
        return empty
    return Fraction(numerator, denominator)


def grid(denominator: int) -> Tuple[Fraction, ...]:
    """The grid {0, 1/k, ..., 1}."""
    if denominator < 1:
        raise InputError("Grid denominator must be positive")
    return tuple(Fraction(i, denominator) for i in range(denominator + 1))
