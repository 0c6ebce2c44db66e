"""Exact polynomial arithmetic and Groebner bases over the rationals.

This module holds the shared sparse term algebra used by every ring in the
package, the polynomial ring K[x1..xn] with K = Q, lexicographic monomial
orders, multivariate division and the Buchberger algorithm producing reduced
Groebner bases. Elimination of the greatest variables is supported through
``eliminate``.

Convention: a MonomialOrder lists its variables from smallest to greatest, so
``MonomialOrder.lex("x", "y")`` is the order x < y and exponent vectors are
compared on the last variable first.
"""

from __future__ import annotations

import operator
from collections.abc import Mapping
from fractions import Fraction
from types import MappingProxyType
from typing import TYPE_CHECKING, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .logging import Events
from .utils import (
    PosyringError,
    RingConstraintError,
    Scalar,
    as_rational,
    default_variables,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
    monomials_coprime,
)

if TYPE_CHECKING:
    from typing import Self

    from collections.abc import Iterable, Sequence

    from .logging import Logger

Monomial = tuple[int, ...]


class ArityMismatchError(PosyringError):
    """Operands belong to rings with a different number of variables."""


class ZeroPolynomialError(PosyringError):
    """A nonzero polynomial was required."""


class OrderError(PosyringError):
    """A monomial order does not fit the requested operation."""


def _sorted_terms(terms: dict[tuple, Fraction]) -> dict[tuple, Fraction]:
    # Descending in the default lex order: last variable compared first.
    return dict(sorted(terms.items(), key=lambda item: item[0][::-1], reverse=True))


class TermAlgebra:
    """Immutable finite map from exponent vectors to nonzero rationals.

    Subclasses fix the admissible exponents through ``_coerce_exponents``;
    everything else (ring operations, equality, hashing) is shared.
    """

    __slots__ = ("_arity", "_terms")

    _arity: int
    _terms: dict[tuple, Fraction]

    def __init__(
        self,
        terms: Mapping[tuple, Scalar] | Iterable[tuple[tuple, Scalar]] = (),
        arity: int | None = None,
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[tuple, Fraction] = {}
        for exponents, coefficient in items:
            key = self._coerce_exponents(tuple(exponents))
            if arity is None:
                arity = len(key)
            elif len(key) != arity:
                raise ArityMismatchError(
                    f"Exponent vector {key} does not match arity {arity}"
                )
            value = collected.get(key, 0) + as_rational(coefficient)
            if value:
                collected[key] = value
            else:
                collected.pop(key, None)
        if arity is None:
            raise PosyringError("Arity is required for an element without terms")
        if arity < 0:
            raise PosyringError("Arity cannot be negative")
        self._arity = arity
        self._terms = _sorted_terms(collected)

    @classmethod
    def _coerce_exponents(cls, exponents: tuple) -> tuple:
        raise NotImplementedError

    @classmethod
    def _build(cls, terms: dict[tuple, Fraction], arity: int) -> Self:
        element = object.__new__(cls)
        element._arity = arity
        element._terms = _sorted_terms(terms)
        return element

    @classmethod
    def zero(cls, arity: int) -> Self:
        return cls._build({}, arity)

    @classmethod
    def constant(cls, value: Scalar, arity: int) -> Self:
        coefficient = as_rational(value)
        if not coefficient:
            return cls.zero(arity)
        return cls._build({(0,) * arity: coefficient}, arity)

    @classmethod
    def variable(cls, index: int, arity: int) -> Self:
        if not 0 <= index < arity:
            raise PosyringError(f"Variable index {index} outside arity {arity}")
        exponents = tuple(1 if k == index else 0 for k in range(arity))
        return cls._build({exponents: Fraction(1)}, arity)

    @classmethod
    def monomial(cls, exponents: Sequence[Any], coefficient: Scalar = 1) -> Self:
        return cls({tuple(exponents): coefficient})

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def is_constant(self) -> bool:
        return self.is_zero or (
            self.is_monomial and not any(next(iter(self._terms)))
        )

    def scale(self, factor: Scalar) -> Self:
        value = as_rational(factor)
        if not value:
            return self.zero(self._arity)
        return self._build(
            {exps: coeff * value for exps, coeff in self._terms.items()}, self._arity
        )

    def mul_term(self, exponents: Sequence[Any], coefficient: Scalar = 1) -> Self:
        value = as_rational(coefficient)
        shift = self._coerce_exponents(tuple(exponents))
        if len(shift) != self._arity:
            raise ArityMismatchError("Monomial does not match the ring arity")
        if not value:
            return self.zero(self._arity)
        return self._build(
            {
                tuple(map(operator.add, exps, shift)): coeff * value
                for exps, coeff in self._terms.items()
            },
            self._arity,
        )

    def _coerce_other(self, other: object) -> Self | None:
        if isinstance(other, TermAlgebra):
            if type(other) is not type(self):
                return None
            if other._arity != self._arity:
                raise ArityMismatchError(
                    f"Cannot combine arity {self._arity} with arity {other._arity}"
                )
            return other  # type: ignore[return-value]
        if isinstance(other, Fraction | int) and not isinstance(other, bool):
            return self.constant(other, self._arity)
        return None

    def _combine(self, other: Self, sign: int) -> Self:
        result = dict(self._terms)
        for exps, coeff in other._terms.items():
            value = result.get(exps, 0) + sign * coeff
            if value:
                result[exps] = value
            else:
                result.pop(exps, None)
        return self._build(result, self._arity)

    def __add__(self, other: object) -> Self:
        operand = self._coerce_other(other)
        if operand is None:
            return NotImplemented
        return self._combine(operand, 1)

    __radd__ = __add__

    def __sub__(self, other: object) -> Self:
        operand = self._coerce_other(other)
        if operand is None:
            return NotImplemented
        return self._combine(operand, -1)

    def __rsub__(self, other: object) -> Self:
        operand = self._coerce_other(other)
        if operand is None:
            return NotImplemented
        return operand._combine(self, -1)

    def __neg__(self) -> Self:
        return self.scale(-1)

    def __mul__(self, other: object) -> Self:
        if isinstance(other, Fraction | int) and not isinstance(other, bool):
            return self.scale(other)
        operand = self._coerce_other(other)
        if operand is None:
            return NotImplemented
        result: dict[tuple, Fraction] = {}
        for left_exps, left_coeff in self._terms.items():
            for right_exps, right_coeff in operand._terms.items():
                key = tuple(map(operator.add, left_exps, right_exps))
                value = result.get(key, 0) + left_coeff * right_coeff
                if value:
                    result[key] = value
                else:
                    result.pop(key, None)
        return self._build(result, self._arity)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Self:
        if not isinstance(exponent, int) or exponent < 0:
            raise RingConstraintError("Only nonnegative integer powers are supported")
        result = self.constant(1, self._arity)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fraction | int) and not isinstance(other, bool):
            return self._terms == self.constant(other, self._arity)._terms
        if type(other) is not type(self):
            return NotImplemented
        return (
            self._arity == other._arity  # type: ignore[attr-defined]
            and self._terms == other._terms  # type: ignore[attr-defined]
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._arity, frozenset(self._terms.items())))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        body = ", ".join(
            f"{exps}: {coeff}" for exps, coeff in self._terms.items()
        )
        return f"{type(self).__name__}({{{body}}}, arity={self._arity})"


class Polynomial(TermAlgebra):
    """Element of Q[x1..xn]: exponents are nonnegative integers."""

    __slots__ = ()

    @classmethod
    def _coerce_exponents(cls, exponents: tuple) -> Monomial:
        coerced: list[int] = []
        for value in exponents:
            if isinstance(value, bool):
                raise RingConstraintError("Booleans are not exponents")
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise RingConstraintError(
                        f"Polynomial exponents must be integers, got {value}"
                    )
                value = value.numerator
            if not isinstance(value, int) or value < 0:
                raise RingConstraintError(
                    f"Polynomial exponents must be nonnegative integers, got {value}"
                )
            coerced.append(value)
        return tuple(coerced)

    @property
    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(sum(exps) for exps in self._terms)

    def degree_in(self, index: int) -> int:
        if self.is_zero:
            return -1
        return max(exps[index] for exps in self._terms)

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if self.is_zero:
            raise ZeroPolynomialError("The zero polynomial has no leading term")
        _check_arity(order, self)
        monomial = max(self._terms, key=order.key)
        return monomial, self._terms[monomial]

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder) -> Polynomial:
        if self.is_zero:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def uses_only(self, count: int) -> bool:
        """True when no variable at index >= count occurs."""
        return all(not any(exps[count:]) for exps in self._terms)

    def padded(self, arity: int) -> Polynomial:
        if arity < self._arity:
            raise ArityMismatchError("Padding cannot shrink the arity")
        extra = (0,) * (arity - self._arity)
        return Polynomial._build(
            {exps + extra: coeff for exps, coeff in self._terms.items()}, arity
        )

    def truncated(self, count: int) -> Polynomial:
        if not self.uses_only(count):
            raise ArityMismatchError(
                f"Polynomial uses variables beyond the first {count}"
            )
        return Polynomial._build(
            {exps[:count]: coeff for exps, coeff in self._terms.items()}, count
        )


class MonomialOrder(BaseModel):
    """Lexicographic order over a declared variable sequence.

    Variables are listed from smallest to greatest, so the last one is
    compared first.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    variables: tuple[str, ...] = Field(
        ..., min_length=1, description="Variables from smallest to greatest"
    )
    kind: Literal["lex"] = Field("lex", description="Order family")

    @field_validator("variables")
    @classmethod
    def validate_unique(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if any(not name for name in value):
            raise ValueError("Variable names cannot be empty")
        if len(set(value)) != len(value):
            raise ValueError("Variable names must be unique")
        return value

    @classmethod
    def lex(cls, *variables: str) -> MonomialOrder:
        return cls(variables=tuple(variables))

    @classmethod
    def default(cls, arity: int) -> MonomialOrder:
        return cls(variables=default_variables(arity))

    @property
    def arity(self) -> int:
        return len(self.variables)

    def key(self, exponents: tuple) -> tuple:
        return exponents[::-1]

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError as exc:
            raise OrderError(f"Unknown variable: {name}") from exc

    def with_greatest(self, name: str) -> MonomialOrder:
        return MonomialOrder(variables=(*self.variables, name))

    def restricted(self, count: int) -> MonomialOrder:
        if not 1 <= count <= self.arity:
            raise OrderError(f"Cannot restrict to {count} variables")
        return MonomialOrder(variables=self.variables[:count])


class GroebnerBasis(BaseModel):
    """Reduced, monic, canonically sorted basis of a polynomial ideal."""

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    elements: tuple[Polynomial, ...] = Field(
        ..., description="Basis elements sorted by ascending leading monomial"
    )
    order: MonomialOrder = Field(..., description="Order the basis is reduced for")
    generators: tuple[Polynomial, ...] = Field(
        (), description="Input generators the cofactors refer to"
    )
    cofactors: tuple[tuple[Polynomial, ...], ...] | None = Field(
        None,
        description="Per element, its expression as a combination of the generators",
    )

    @model_validator(mode="after")
    def validate_shape(self) -> GroebnerBasis:
        for element in self.elements:
            if element.arity != self.order.arity:
                raise ValueError("Basis element arity does not match the order")
        if self.cofactors is not None:
            if len(self.cofactors) != len(self.elements):
                raise ValueError("Cofactors must be given for every element")
            for row in self.cofactors:
                if len(row) != len(self.generators):
                    raise ValueError("Cofactor rows must match the generators")
        return self

    @property
    def arity(self) -> int:
        return self.order.arity

    @property
    def is_zero_ideal(self) -> bool:
        return not self.elements

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant

    def leading_monomials(self) -> list[Monomial]:
        return [element.leading_monomial(self.order) for element in self.elements]


def _check_arity(order: MonomialOrder, *polynomials: Polynomial) -> None:
    for polynomial in polynomials:
        if polynomial.arity != order.arity:
            raise ArityMismatchError(
                f"Polynomial arity {polynomial.arity} does not match order "
                f"arity {order.arity}"
            )


def _divide(
    f: Polynomial,
    divisors: Sequence[Polynomial],
    order: MonomialOrder,
    *,
    keep_quotients: bool,
) -> tuple[list[Polynomial], Polynomial]:
    _check_arity(order, f, *divisors)
    leads: list[tuple[Monomial, Fraction]] = []
    for divisor in divisors:
        if divisor.is_zero:
            raise ZeroPolynomialError("Division by the zero polynomial")
        leads.append(divisor.leading_term(order))

    key = order.key
    quotients: list[dict[tuple, Fraction]] = [{} for _ in divisors]
    remainder: dict[tuple, Fraction] = {}
    working = dict(f._terms)
    while working:
        monomial = max(working, key=key)
        coefficient = working[monomial]
        for index, (lead_monomial, lead_coefficient) in enumerate(leads):
            if not monomial_divides(lead_monomial, monomial):
                continue
            shift = monomial_quotient(monomial, lead_monomial)
            factor = coefficient / lead_coefficient
            if keep_quotients:
                # Leading monomials of the working polynomial strictly decrease,
                # so each shift is seen at most once per divisor.
                quotients[index][shift] = factor
            for exps, coeff in divisors[index]._terms.items():
                target = tuple(map(operator.add, exps, shift))
                value = working.get(target, 0) - factor * coeff
                if value:
                    working[target] = value
                else:
                    working.pop(target, None)
            break
        else:
            remainder[monomial] = coefficient
            del working[monomial]

    arity = f.arity
    return (
        [Polynomial._build(quotient, arity) for quotient in quotients],
        Polynomial._build(remainder, arity),
    )


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    """Sum of two polynomials of the same arity."""
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Product of two polynomials of the same arity."""
    return f * g


def divide(
    f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder
) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division of ``f`` by an ordered list of divisors.

    Returns quotients and remainder with ``f == sum(q * d) + r`` and no term of
    ``r`` divisible by a leading term of any divisor.

    Raises:
        ZeroPolynomialError: If a divisor is zero.
        ArityMismatchError: If arities disagree with the order.
    """
    return _divide(f, divisors, order, keep_quotients=True)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    if f.is_zero or g.is_zero:
        raise ZeroPolynomialError("S-polynomials need nonzero inputs")
    f_monomial, f_coefficient = f.leading_term(order)
    g_monomial, g_coefficient = g.leading_term(order)
    _check_arity(order, g)
    common = monomial_lcm(f_monomial, g_monomial)
    return f.mul_term(
        monomial_quotient(common, f_monomial), 1 / f_coefficient
    ) - g.mul_term(monomial_quotient(common, g_monomial), 1 / g_coefficient)


def _chain_criterion(
    i: int, j: int, leads: list[Monomial], pending: set[tuple[int, int]]
) -> bool:
    target = monomial_lcm(leads[i], leads[j])
    for k, lead in enumerate(leads):
        if k in (i, j):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        if monomial_divides(lead, target):
            return True
    return False


def _combine_rows(
    left: list[Polynomial],
    left_shift: Monomial,
    right: list[Polynomial],
    right_shift: Monomial,
) -> list[Polynomial]:
    return [
        a.mul_term(left_shift) - b.mul_term(right_shift)
        for a, b in zip(left, right, strict=True)
    ]


def _subtract_quotients(
    row: list[Polynomial],
    quotients: Sequence[Polynomial],
    rows: Sequence[list[Polynomial]],
) -> list[Polynomial]:
    for quotient, other in zip(quotients, rows, strict=True):
        if quotient.is_zero:
            continue
        row = [
            entry - quotient * other_entry
            for entry, other_entry in zip(row, other, strict=True)
        ]
    return row


def buchberger(
    generators: Sequence[Polynomial],
    order: MonomialOrder,
    *,
    track_cofactors: bool = False,
    logger: Logger | None = None,
) -> GroebnerBasis:
    """Compute the reduced Groebner basis of the ideal spanned by ``generators``.

    Zero generators are dropped; an empty or all-zero list yields the empty
    basis of the zero ideal. Pairs are processed smallest lcm first, skipping
    pairs with coprime leading monomials and pairs covered by the chain
    criterion. With ``track_cofactors`` every basis element carries its
    expression in terms of the input generators.
    """
    generators = tuple(generators)
    _check_arity(order, *generators)
    if logger is None:
        return _buchberger(generators, order, track_cofactors)[0]
    with logger.timed(
        Events.GROEBNER_COMPLETED, "Groebner basis computed", phase="groebner"
    ) as data:
        basis, stats = _buchberger(generators, order, track_cofactors)
        data.update(stats)
    return basis


def _buchberger(
    generators: tuple[Polynomial, ...], order: MonomialOrder, track_cofactors: bool
) -> tuple[GroebnerBasis, dict[str, int]]:
    arity = order.arity
    count = len(generators)
    zero = Polynomial.zero(arity)
    one = Polynomial.constant(1, arity)

    polys: list[Polynomial] = []
    leads: list[Monomial] = []
    rows: list[list[Polynomial]] | None = [] if track_cofactors else None
    pending: set[tuple[int, int]] = set()

    def insert(polynomial: Polynomial, row: list[Polynomial] | None) -> None:
        monomial, coefficient = polynomial.leading_term(order)
        inverse = 1 / coefficient
        polys.append(polynomial.scale(inverse))
        leads.append(monomial)
        if rows is not None and row is not None:
            rows.append([entry.scale(inverse) for entry in row])
        newest = len(polys) - 1
        pending.update((older, newest) for older in range(newest))

    for index, generator in enumerate(generators):
        if generator.is_zero:
            continue
        unit_row = None
        if rows is not None:
            unit_row = [one if k == index else zero for k in range(count)]
        insert(generator, unit_row)

    reduced_pairs = 0
    skipped_pairs = 0
    while pending:
        pair = min(
            pending,
            key=lambda p: (order.key(monomial_lcm(leads[p[0]], leads[p[1]])), p),
        )
        pending.discard(pair)
        i, j = pair
        if monomials_coprime(leads[i], leads[j]) or _chain_criterion(
            i, j, leads, pending
        ):
            skipped_pairs += 1
            continue
        common = monomial_lcm(leads[i], leads[j])
        shift_i = monomial_quotient(common, leads[i])
        shift_j = monomial_quotient(common, leads[j])
        s_poly = polys[i].mul_term(shift_i) - polys[j].mul_term(shift_j)
        quotients, remainder = _divide(
            s_poly, polys, order, keep_quotients=rows is not None
        )
        reduced_pairs += 1
        if remainder.is_zero:
            continue
        row = None
        if rows is not None:
            row = _combine_rows(rows[i], shift_i, rows[j], shift_j)
            row = _subtract_quotients(row, quotients, rows)
        insert(remainder, row)

    elements, cofactors = _reduce_basis(polys, leads, rows, order)
    basis = GroebnerBasis(
        elements=tuple(elements),
        order=order,
        generators=generators,
        cofactors=(
            tuple(tuple(row) for row in cofactors) if cofactors is not None else None
        ),
    )
    stats = {
        "generators": count,
        "intermediate_size": len(polys),
        "basis_size": len(elements),
        "pairs_reduced": reduced_pairs,
        "pairs_skipped": skipped_pairs,
    }
    return basis, stats


def _reduce_basis(
    polys: list[Polynomial],
    leads: list[Monomial],
    rows: list[list[Polynomial]] | None,
    order: MonomialOrder,
) -> tuple[list[Polynomial], list[list[Polynomial]] | None]:
    ranked = sorted(range(len(polys)), key=lambda k: (order.key(leads[k]), k))
    kept: list[int] = []
    for candidate in ranked:
        if any(monomial_divides(leads[k], leads[candidate]) for k in kept):
            continue
        kept.append(candidate)

    elements = [polys[k] for k in kept]
    kept_rows = [rows[k] for k in kept] if rows is not None else None
    for position in range(len(elements)):
        others = elements[:position] + elements[position + 1 :]
        if not others:
            continue
        quotients, remainder = _divide(
            elements[position], others, order, keep_quotients=kept_rows is not None
        )
        elements[position] = remainder
        if kept_rows is not None:
            other_rows = kept_rows[:position] + kept_rows[position + 1 :]
            kept_rows[position] = _subtract_quotients(
                kept_rows[position], quotients, other_rows
            )
    return elements, kept_rows


def reduce(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Normal form of ``f`` modulo a reduced basis; zero iff ``f`` is in the ideal."""
    _check_arity(basis.order, f)
    if basis.is_zero_ideal:
        return f
    _, remainder = _divide(f, basis.elements, basis.order, keep_quotients=False)
    return remainder


def eliminate(basis: GroebnerBasis, keep_variables: Sequence[str]) -> GroebnerBasis:
    """Restrict a lex basis to the elements free of the dropped variables.

    The kept variables must be the smallest ones of the basis order, so the
    result is the reduced basis of the elimination ideal over them.

    Raises:
        OrderError: If a dropped variable is not greater than every kept one.
    """
    names = basis.order.variables
    kept_indices = {basis.order.index(name) for name in keep_variables}
    if not kept_indices:
        raise OrderError("At least one variable must be kept")
    count = len(kept_indices)
    if kept_indices != set(range(count)):
        raise OrderError(
            "Eliminated variables must be greater than every kept variable "
            f"(order: {' < '.join(names)})"
        )
    selected = [
        position
        for position, element in enumerate(basis.elements)
        if element.uses_only(count)
    ]
    cofactors = None
    if basis.cofactors is not None:
        cofactors = tuple(basis.cofactors[position] for position in selected)
    return GroebnerBasis(
        elements=tuple(
            basis.elements[position].truncated(count) for position in selected
        ),
        order=basis.order.restricted(count),
        generators=basis.generators,
        cofactors=cofactors,
    )
