"""Exact-number helpers for serialisation: integers stay integers,
other rationals travel as ``"p/q"`` strings."""
from __future__ import annotations

from fractions import Fraction


def to_json_number(x):
    if isinstance(x, bool):
        return x
    q = Fraction(x)
    if q.denominator == 1:
        return int(q)
    return f"{q.numerator}/{q.denominator}"


def from_json_number(x) -> Fraction | int:
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        q = Fraction(x)
        return int(q) if q.denominator == 1 else q
    raise TypeError(f"cannot read {x!r} as an exact number")


def fmt(x) -> str:
    return str(to_json_number(x))
