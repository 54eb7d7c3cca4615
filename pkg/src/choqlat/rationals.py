"""Coercion of user-supplied numbers to exact rationals."""

from decimal import Decimal, InvalidOperation
from fractions import Fraction


def as_fraction(value) -> Fraction:
    """Convert ``value`` to an exact ``Fraction``.

    Accepts Fraction, int, Decimal, str ("3/10", "0.3", "3e-2") and float.
    Floats are read through their shortest decimal representation, so 0.3
    becomes exactly 3/10 rather than the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numeric values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(Decimal(repr(value)))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {value!r}") from None
        except ValueError:
            pass
        try:
            return Fraction(Decimal(text))
        except InvalidOperation:
            raise ValueError(f"cannot parse {value!r} as a rational") from None
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")
