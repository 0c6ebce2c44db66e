from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

Scalar = Fraction | int

# Name of the fresh variable adjoined for saturation; never accepted from users.
ELIMINATION_VARIABLE = "ysat"


class PosyringError(ValueError):
    """Base error for algebraic input the library cannot accept."""


class RingConstraintError(PosyringError):
    """An element or argument lies outside the admissible set of its ring."""


def as_rational(value: Scalar | str) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("Booleans are not ring coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PosyringError(f"Invalid rational literal: {value!r}") from exc
    raise TypeError(f"Unsupported coefficient type: {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def denominator_lcm(values: Iterable[Scalar]) -> int:
    result = 1
    for value in values:
        if isinstance(value, Fraction):
            result = lcm(result, value.denominator)
    return result


def default_variables(arity: int) -> tuple[str, ...]:
    return tuple(f"x{index}" for index in range(1, arity + 1))


def normalize_name(value: str) -> str:
    return value.strip()


def normalize_names(values: Iterable[str]) -> list[str]:
    return [normalize_name(value) for value in values if value.strip()]


def monomial_divides(divisor: Sequence[int], target: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(divisor, target, strict=True))


def monomial_lcm(left: Sequence[int], right: Sequence[int]) -> tuple[int, ...]:
    return tuple(max(a, b) for a, b in zip(left, right, strict=True))


def monomial_quotient(
    numerator: Sequence[int], denominator: Sequence[int]
) -> tuple[int, ...]:
    return tuple(a - b for a, b in zip(numerator, denominator, strict=True))


def monomials_coprime(left: Sequence[int], right: Sequence[int]) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(left, right, strict=True))
