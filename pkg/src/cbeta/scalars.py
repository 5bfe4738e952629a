"""Scalar handling shared by the evaluators: exact rationals or complex floats, never mixed."""

from __future__ import annotations

from fractions import Fraction
from numbers import Complex, Rational
from typing import Iterable, List


def is_exact(value) -> bool:
    return isinstance(value, Rational) and not isinstance(value, bool)


def coerce(value):
    """Turn ints and "p/q" strings into Fractions; leave floats/complex alone."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, Complex):
        return complex(value)
    raise TypeError(f"unsupported scalar {value!r}")


def unify(*groups: Iterable) -> List[list]:
    """Coerce several lists together: all Fractions if every entry is exact, else all complex."""
    lists = [[coerce(v) for v in g] for g in groups]
    if all(is_exact(v) for lst in lists for v in lst):
        return lists
    return [[complex(v) for v in lst] for lst in lists]


def scalar_to_json(value):
    if is_exact(value):
        return str(Fraction(value))
    c = complex(value)
    return [c.real, c.imag]


def scalar_from_json(obj):
    return coerce(obj)


def as_complex(value) -> complex:
    return complex(value)
