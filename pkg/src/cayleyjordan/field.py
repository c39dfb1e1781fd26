"""Exact rational scalars.

:class:`fractions.Fraction` already meets every requirement we have of a
scalar (immutable, always in lowest terms, positive denominator, unique
zero), so it is used directly as the scalar type.  The functions here are
the thin named surface the rest of the package and the file formats use.
"""

from fractions import Fraction
import re

from .errors import ParseError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def scalar(value) -> Fraction:
    """Coerce an int, Fraction or canonical string into a scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def neg(a: Fraction) -> Fraction:
    return -a


def inv(a: Fraction) -> Fraction:
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / a


def render(x: Fraction) -> str:
    """Canonical text: ``p`` for integers, ``p/q`` otherwise."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``.  Non-canonical forms such as ``2/4`` are accepted
    and normalized; a zero denominator or anything else is a :class:`ParseError`."""
    text = text.strip()
    if not _SCALAR_RE.match(text):
        raise ParseError(f"not a rational number: {text!r}")
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(text))
