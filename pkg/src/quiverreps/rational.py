"""Parsing and formatting of exact rationals ("p/q" strings)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, DomainError


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if not s:
        raise DomainError("empty rational")
    if any(c in s for c in ".eE"):
        # decimals would smuggle in floating point
        raise DomainError(f"rational {s!r} must be an integer or p/q")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse rational {s!r}") from exc


def parse_rational_vector(text: str | Sequence) -> tuple[Fraction, ...]:
    if isinstance(text, str):
        parts = [p for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    return tuple(parse_rational(p) for p in parts)


def parse_int_vector(text: str | Sequence) -> tuple[int, ...]:
    if isinstance(text, str):
        parts = [p for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    out = []
    for p in parts:
        try:
            out.append(int(str(p).strip()))
        except ValueError as exc:
            raise DomainError(f"cannot parse integer {p!r}") from exc
    return tuple(out)


def fmt(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vector(xs: Iterable) -> list[str]:
    return [fmt(x) for x in xs]


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(a * b for a, b in zip(x, y))


def is_integral(x: Fraction | int) -> bool:
    return Fraction(x).denominator == 1
