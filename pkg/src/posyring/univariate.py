"""Univariate helpers over Q[x]: Euclid, exact division and an incomplete
reducibility tester.

Univariate polynomials are plain ``Polynomial`` values of arity 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from functools import reduce as fold
from math import gcd as int_gcd
from typing import TYPE_CHECKING

from sympy import cyclotomic_poly, divisors, integer_nthroot, primefactors, totient

from .polycore import MonomialOrder, Polynomial, ZeroPolynomialError, divide
from .utils import PosyringError, denominator_lcm

if TYPE_CHECKING:
    from collections.abc import Iterable

_ORDER = MonomialOrder.default(1)
_X = Polynomial.variable(0, 1)


def _check_univariate(*polynomials: Polynomial) -> None:
    for polynomial in polynomials:
        if polynomial.arity != 1:
            raise PosyringError(
                f"Expected a univariate polynomial, got arity {polynomial.arity}"
            )


def coefficients(f: Polynomial) -> list[Fraction]:
    """Dense coefficient list, index = degree."""
    _check_univariate(f)
    if f.is_zero:
        return []
    dense = [Fraction(0)] * (f.total_degree + 1)
    for (exponent,), coefficient in f.terms.items():
        dense[exponent] = coefficient
    return dense


def from_coefficients(values: Iterable[Fraction | int]) -> Polynomial:
    terms = {(degree,): value for degree, value in enumerate(values) if value}
    if not terms:
        return Polynomial.zero(1)
    return Polynomial(terms)


def poly_divmod(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    _check_univariate(f, g)
    quotients, remainder = divide(f, [g], _ORDER)
    return quotients[0], remainder


def monic(f: Polynomial) -> Polynomial:
    return f.monic(_ORDER)


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    _check_univariate(f, g)
    while not g.is_zero:
        f, g = g, poly_divmod(f, g)[1]
    return monic(f)


def gcd_all(polynomials: Iterable[Polynomial]) -> Polynomial:
    return fold(gcd, polynomials, Polynomial.zero(1))


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    quotient, remainder = poly_divmod(f, g)
    if not remainder.is_zero:
        raise PosyringError("Polynomial division leaves a nonzero remainder")
    return quotient


def divides(g: Polynomial, f: Polynomial) -> bool:
    if g.is_zero:
        return f.is_zero
    return poly_divmod(f, g)[1].is_zero


def integer_coefficients(f: Polynomial) -> list[int]:
    """Primitive integer coefficient list with a positive leading coefficient."""
    dense = coefficients(f)
    if not dense:
        raise ZeroPolynomialError("The zero polynomial has no primitive form")
    scale = denominator_lcm(dense)
    integral = [int(value * scale) for value in dense]
    content = fold(int_gcd, integral)
    if integral[-1] < 0:
        content = -content
    return [value // content for value in integral]


def rational_roots(f: Polynomial) -> list[Fraction]:
    """All rational roots, found from divisors of the extreme coefficients."""
    integral = integer_coefficients(f)
    roots: list[Fraction] = []
    if integral[0] == 0:
        roots.append(Fraction(0))
        # Strip the factor x before searching nonzero roots.
        while integral and integral[0] == 0:
            integral = integral[1:]
    if len(integral) < 2:
        return roots
    value_poly = from_coefficients(integral)
    for numerator in divisors(abs(integral[0])):
        for denominator in divisors(abs(integral[-1])):
            for sign in (1, -1):
                candidate = Fraction(sign * numerator, denominator)
                if candidate in roots:
                    continue
                if evaluate(value_poly, candidate) == 0:
                    roots.append(candidate)
    return sorted(roots)


def evaluate(f: Polynomial, value: Fraction) -> Fraction:
    result = Fraction(0)
    for coefficient in reversed(coefficients(f)):
        result = result * value + coefficient
    return result


def eisenstein_prime(f: Polynomial) -> int | None:
    """Smallest prime certifying irreducibility of ``f`` or of its reversal."""
    integral = integer_coefficients(f)
    if len(integral) < 2:
        return None
    for candidate in (integral, integral[::-1]):
        lead, constant = candidate[-1], candidate[0]
        if constant == 0:
            continue
        lower = abs(fold(int_gcd, candidate[:-1]))
        for prime in primefactors(lower):
            if lead % prime and constant % (prime * prime):
                return int(prime)
    return None


def _rational_root(value: Fraction, degree: int) -> Fraction | None:
    if value < 0:
        if degree % 2 == 0:
            return None
        root = _rational_root(-value, degree)
        return -root if root is not None else None
    numerator, exact_numerator = integer_nthroot(value.numerator, degree)
    denominator, exact_denominator = integer_nthroot(value.denominator, degree)
    if exact_numerator and exact_denominator:
        return Fraction(int(numerator), int(denominator))
    return None


def _binomial_factor(f: Polynomial) -> Polynomial | None:
    # f = x^k + c with c != 0
    dense = coefficients(monic(f))
    k = len(dense) - 1
    constant = dense[0]
    if k < 2 or constant == 0 or any(dense[1:k]):
        return None
    target = -constant
    for prime in primefactors(k):
        root = _rational_root(target, int(prime))
        if root is not None:
            return Polynomial({(k // prime,): 1, (0,): -root})
    if k % 4 == 0 and constant > 0:
        fourth = _rational_root(constant / 4, 4)
        if fourth is not None:
            quarter = k // 4
            return Polynomial(
                {
                    (2 * quarter,): 1,
                    (quarter,): 2 * fourth,
                    (0,): 2 * fourth * fourth,
                }
            )
    return None


def _reversed(f: Polynomial) -> Polynomial:
    return from_coefficients(coefficients(f)[::-1])


@cache
def _cyclotomic_orders(degree: int) -> tuple[int, ...]:
    # phi(j) >= sqrt(j / 2), so no order past 2 * degree^2 qualifies
    return tuple(
        order
        for order in range(2, 2 * degree * degree + 1)
        if totient(order) <= degree
    )


@cache
def _cyclotomic(order: int) -> Polynomial:
    values = cyclotomic_poly(order, polys=True).all_coeffs()
    return from_coefficients(int(value) for value in reversed(values))


def _cyclotomic_factor(f: Polynomial) -> Polynomial | None:
    # Cyclotomic factors of order >= 2 are self-reciprocal, so they divide
    # gcd(f, reversed f); f(0) != 0 here since 0 is not a root.
    common = gcd(f, _reversed(f))
    degree = f.total_degree
    if common.total_degree == 0:
        return None
    if common.total_degree < degree:
        return common
    for order in _cyclotomic_orders(degree):
        factor = _cyclotomic(order)
        if factor.total_degree < degree and divides(factor, f):
            return factor
    return None


def find_factor(f: Polynomial) -> Polynomial | None:
    """Search a nontrivial monic factor of ``f`` over Q.

    The search is incomplete: it tries rational roots, binomial patterns, the
    common part of f and its reversal, and cyclotomic factors. A ``None``
    result proves irreducibility only for degree at most 3.
    """
    _check_univariate(f)
    degree = f.total_degree
    if degree < 2:
        return None
    roots = rational_roots(f)
    if roots:
        return _X - roots[-1]
    if degree <= 3:
        return None
    return _binomial_factor(f) or _cyclotomic_factor(f)


def is_irreducible_certified(f: Polynomial) -> bool:
    """True when ``f`` is provably irreducible by the cheap tests."""
    degree = f.total_degree
    if degree == 1:
        return True
    if degree in (2, 3):
        return not rational_roots(f)
    return eisenstein_prime(f) is not None
