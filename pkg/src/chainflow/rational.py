"""Exact rational parsing and formatting.

All solver arithmetic uses :class:`fractions.Fraction`.  Numeric values in
JSON inputs may be integers, decimal literals, or ``"num/den"`` strings; all
three are converted to exact fractions.  A decimal literal is interpreted as
the decimal it spells (``0.4`` becomes ``2/5``), never as the nearest binary
float.
"""

from fractions import Fraction

from .errors import InputError

Rational = Fraction


def to_fraction(value) -> Fraction:
    """Convert a JSON-decoded numeric value to an exact Fraction.

    Accepts int, Fraction, ``"num/den"`` / decimal strings, and float.  A
    float is converted through its shortest decimal representation, so any
    value that was written as a decimal literal round-trips exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"expected a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational from {value!r}") from exc
    raise InputError(f"cannot parse rational from {value!r}")


def format_fraction(value: Fraction, style: str = "exact") -> str | float:
    """Render a Fraction for output.

    ``exact`` gives ``"num/den"`` (or a plain integer string), ``pretty``
    gives a float for human consumption.
    """
    if style == "pretty":
        return float(value)
    return str(value)
