"""Exact rational helpers on top of ``fractions.Fraction``.

Costs, budgets and coefficients are ``Fraction`` values everywhere; floats are
rejected at the boundaries so nothing in the pipeline is ever rounded.
"""

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

Rational = Fraction

_RATIONAL_TEXT = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rational(value: Union[int, str, Fraction]) -> Fraction:
    """
    Convert an integer, a ``Fraction`` or a rational string to a ``Fraction``.

    Args:
        value: ``int``, ``Fraction``, or text of the form ``"n"`` or ``"p/q"``

    Returns:
        The exact rational value

    Raises:
        ValueError: for floats, booleans, malformed text or a zero denominator
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_TEXT.match(value)
        if not match:
            raise ValueError(f"not a rational: {value!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(numerator, denominator)
    raise ValueError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render as ``"n"`` or ``"p/q"`` (``Fraction`` keeps the reduced form)."""
    return str(Fraction(value))


def rational_min(values: Iterable[Fraction]) -> Fraction:
    """Minimum of a nonempty finite collection."""
    items = list(values)
    if not items:
        raise ValueError("minimum over an empty collection")
    return min(items)


def rational_div(numerator: Fraction, denominator: Union[int, Fraction]) -> Fraction:
    """Exact division; raises ``ZeroDivisionError`` for a zero divisor."""
    if denominator == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(numerator) / Fraction(denominator)


def denominator_lcm(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators (1 for an empty collection)."""
    return reduce(lambda acc, q: acc * q.denominator // math.gcd(acc, q.denominator),
                  (Fraction(v) for v in values), 1)
