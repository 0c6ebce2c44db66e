"""Laurent polynomial ring over Q: denominator clearing, units, evaluation
and ideal membership through saturation.

An ideal of the Laurent ring is decided inside Q[x1..xn]: with
F(f) = x^alpha * f the denominator-cleared image and m = x1*...*xn,

    g in <f1..fk>  iff  F(g) in <F(f1)..F(fk)> : m^infinity

and the saturation is the elimination ideal <F(fi), 1 - y*m> meet Q[x],
computed with a lex order where the fresh variable y is greatest.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .logging import Events
from .polycore import (
    ArityMismatchError,
    GroebnerBasis,
    MonomialOrder,
    Polynomial,
    TermAlgebra,
    buchberger,
    divide,
    eliminate,
)
from .utils import (
    ELIMINATION_VARIABLE,
    PosyringError,
    RingConstraintError,
    as_rational,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .logging import Logger


class LaurentPolynomial(TermAlgebra):
    """Element of Q[x1^(+-1)..xn^(+-1)]: exponents are integers of any sign."""

    __slots__ = ()

    @classmethod
    def _coerce_exponents(cls, exponents: tuple) -> tuple[int, ...]:
        coerced: list[int] = []
        for value in exponents:
            if isinstance(value, bool):
                raise RingConstraintError("Booleans are not exponents")
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise RingConstraintError(
                        f"Laurent exponents must be integers, got {value}"
                    )
                value = value.numerator
            if not isinstance(value, int):
                raise RingConstraintError(
                    f"Laurent exponents must be integers, got {value!r}"
                )
            coerced.append(value)
        return tuple(coerced)

    @classmethod
    def from_polynomial(cls, polynomial: Polynomial) -> LaurentPolynomial:
        return cls._build(dict(polynomial.terms), polynomial.arity)

    def to_polynomial(self) -> Polynomial:
        """The same element in Q[x]; fails on negative exponents."""
        return Polynomial(self.terms.items(), self.arity)

    def inverse(self) -> LaurentPolynomial:
        """Inverse of a unit, i.e. of a single term."""
        if not self.is_monomial:
            raise RingConstraintError("Only single terms are invertible")
        ((exponents, coefficient),) = self.terms.items()
        return LaurentPolynomial._build(
            {tuple(-value for value in exponents): 1 / coefficient}, self.arity
        )


class Point(BaseModel):
    """Point of (Q \\ {0})^n."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coordinates: tuple[Fraction, ...] = Field(
        ..., description="One nonzero rational per variable"
    )

    @field_validator("coordinates", mode="before")
    @classmethod
    def coerce_coordinates(cls, value: object) -> tuple[Fraction, ...]:
        if not isinstance(value, list | tuple):
            raise ValueError("Coordinates must be a sequence")
        coordinates = tuple(as_rational(entry) for entry in value)
        for index, entry in enumerate(coordinates):
            if entry == 0:
                raise ValueError(f"Coordinate {index + 1} is zero")
        return coordinates

    @classmethod
    def of(cls, *values: Fraction | int) -> Point:
        return cls(coordinates=values)

    @property
    def arity(self) -> int:
        return len(self.coordinates)


class LaurentWitness(BaseModel):
    """Certificate of a positive membership answer.

    ``m^saturation_power * F(g) = sum(h_i * F(f_i))`` in Q[x] and
    ``g = sum(u_i * f_i)`` in the Laurent ring, with h_i = ``cofactors`` and
    u_i = ``laurent_cofactors``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    saturation_power: int = Field(..., ge=0, description="Exponent of x1*...*xn")
    cofactors: tuple[Polynomial, ...] = Field(
        ..., description="Polynomial cofactors of the cleared generators"
    )
    laurent_cofactors: tuple[LaurentPolynomial, ...] = Field(
        ..., description="Laurent cofactors of the original generators"
    )


class MembershipResult(BaseModel):
    """Answer of a Laurent membership query."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    member: bool = Field(..., description="Whether g lies in the ideal")
    witness: LaurentWitness | None = Field(
        None, description="Certificate, when requested and member is true"
    )
    basis: GroebnerBasis = Field(..., description="Basis of the saturated ideal")


def clear_exponents(f: LaurentPolynomial) -> tuple[int, ...]:
    """alpha with alpha_i = max(-e_i) over the terms of f; zeros for f = 0."""
    if f.is_zero:
        return (0,) * f.arity
    return tuple(
        max(-exponents[index] for exponents in f.terms) for index in range(f.arity)
    )


def clear_factor(f: LaurentPolynomial) -> Polynomial:
    """F(f) = x^alpha * f, the polynomial with no common monomial factor."""
    if f.is_zero:
        return Polynomial.zero(f.arity)
    alpha = clear_exponents(f)
    return Polynomial(
        (
            (tuple(e + a for e, a in zip(exponents, alpha, strict=True)), coefficient)
            for exponents, coefficient in f.terms.items()
        ),
        f.arity,
    )


def is_unit_laurent(f: LaurentPolynomial) -> bool:
    return f.is_monomial


def evaluate(f: LaurentPolynomial, point: Point) -> Fraction:
    """Exact value of f at a point with nonzero coordinates."""
    if point.arity != f.arity:
        raise ArityMismatchError(
            f"Point has {point.arity} coordinates, element has arity {f.arity}"
        )
    total = Fraction(0)
    for exponents, coefficient in f.terms.items():
        value = coefficient
        for coordinate, exponent in zip(point.coordinates, exponents, strict=True):
            value *= coordinate**exponent
        total += value
    return total


def in_variety(point: Point, generators: Sequence[LaurentPolynomial]) -> bool:
    return all(evaluate(f, point) == 0 for f in generators)


def _common_arity(
    generators: Sequence[LaurentPolynomial], order: MonomialOrder | None
) -> int:
    if order is not None:
        arity = order.arity
    elif generators:
        arity = generators[0].arity
    else:
        raise PosyringError("An order or at least one generator is required")
    for f in generators:
        if f.arity != arity:
            raise ArityMismatchError(
                f"Generator arity {f.arity} does not match arity {arity}"
            )
    return arity


def saturation_basis(
    generators: Sequence[LaurentPolynomial],
    order: MonomialOrder | None = None,
    *,
    track_cofactors: bool = False,
    logger: Logger | None = None,
) -> GroebnerBasis:
    """Reduced basis of <F(f1)..F(fk)> : (x1*...*xn)^infinity in Q[x].

    The returned basis keeps as ``generators`` the lifted system
    F(f1)..F(fk), 1 - y*x1*...*xn over the order extended by y, so tracked
    cofactors refer to that system.
    """
    arity = _common_arity(generators, order)
    order = order or MonomialOrder.default(arity)
    extended = order.with_greatest(ELIMINATION_VARIABLE)

    lifted = [clear_factor(f).padded(arity + 1) for f in generators]
    lifted.append(
        Polynomial(
            {(0,) * (arity + 1): 1, (1,) * (arity + 1): -1},
            arity + 1,
        )
    )
    if logger is not None:
        logger.debug(
            Events.GROEBNER_STARTED,
            "Saturating by the product of all variables",
            phase="saturate",
            data={"generators": len(generators), "arity": arity},
        )
    basis = buchberger(
        lifted, extended, track_cofactors=track_cofactors, logger=logger
    )
    return eliminate(basis, order.variables)


def member_laurent(
    g: LaurentPolynomial,
    generators: Sequence[LaurentPolynomial],
    order: MonomialOrder | None = None,
    *,
    certificate: bool = False,
    logger: Logger | None = None,
) -> MembershipResult:
    """Decide g in <generators> in the Laurent ring.

    With ``certificate`` a positive answer carries a ``LaurentWitness`` built
    from the division quotients and the cofactors tracked by Buchberger.
    """
    generators = tuple(generators)
    if order is None:
        order = MonomialOrder.default(g.arity)
    _common_arity((g, *generators), order)

    basis = saturation_basis(
        generators, order, track_cofactors=certificate, logger=logger
    )
    target = clear_factor(g)
    if basis.elements:
        quotients, remainder = divide(target, basis.elements, basis.order)
    else:
        quotients, remainder = [], target
    member = remainder.is_zero

    witness = None
    if member and certificate:
        witness = _build_witness(g, generators, quotients, basis)
        if logger is not None:
            logger.debug(
                Events.CERTIFICATE_BUILT,
                "Membership certificate built",
                phase="member",
                data={"saturation_power": witness.saturation_power},
            )
    if logger is not None:
        logger.debug(
            Events.MEMBERSHIP_DECIDED,
            "Laurent membership decided",
            phase="member",
            data={"member": member, "basis_size": len(basis.elements)},
        )
    return MembershipResult(member=member, witness=witness, basis=basis)


def _build_witness(
    g: LaurentPolynomial,
    generators: tuple[LaurentPolynomial, ...],
    quotients: Sequence[Polynomial],
    basis: GroebnerBasis,
) -> LaurentWitness:
    arity = g.arity
    count = len(generators)
    if basis.cofactors is None:
        raise PosyringError("Certificates need a basis with tracked cofactors")

    # Combined cofactors over the lifted system, in Q[x, y].
    lifted_zero = Polynomial.zero(arity + 1)
    combined = [lifted_zero] * count
    for quotient, row in zip(quotients, basis.cofactors, strict=True):
        if quotient.is_zero:
            continue
        lifted_quotient = quotient.padded(arity + 1)
        for index in range(count):
            combined[index] = combined[index] + lifted_quotient * row[index]
    for index, generator in enumerate(generators):
        if generator.is_zero:
            combined[index] = lifted_zero

    # Substitute y = 1/m, then clear the denominator m^power.
    power = max(
        (exponents[arity] for h in combined for exponents in h.terms), default=0
    )
    cofactors = [
        Polynomial(
            (
                (
                    tuple(
                        value + power - exponents[arity]
                        for value in exponents[:arity]
                    ),
                    coefficient,
                )
                for exponents, coefficient in h.terms.items()
            ),
            arity,
        )
        for h in combined
    ]
    while power > 0 and all(
        all(all(exponents) for exponents in h.terms) for h in cofactors
    ):
        shift = (-1,) * arity
        cofactors = [
            Polynomial(
                (
                    (tuple(a + b for a, b in zip(exponents, shift, strict=True)), c)
                    for exponents, c in h.terms.items()
                ),
                arity,
            )
            for h in cofactors
        ]
        power -= 1

    alpha_g = clear_exponents(g)
    laurent_cofactors = []
    for generator, cofactor in zip(generators, cofactors, strict=True):
        alpha = clear_exponents(generator)
        shift = tuple(
            a - b - power for a, b in zip(alpha, alpha_g, strict=True)
        )
        laurent_cofactors.append(
            LaurentPolynomial.from_polynomial(cofactor).mul_term(shift)
        )
    return LaurentWitness(
        saturation_power=power,
        cofactors=tuple(cofactors),
        laurent_cofactors=tuple(laurent_cofactors),
    )


def verify_laurent_witness(
    g: LaurentPolynomial,
    generators: Sequence[LaurentPolynomial],
    witness: LaurentWitness,
) -> bool:
    """Re-multiply both identities of a certificate exactly."""
    if len(witness.cofactors) != len(generators) or len(
        witness.laurent_cofactors
    ) != len(generators):
        return False
    arity = g.arity
    product = Polynomial.monomial((witness.saturation_power,) * arity)
    cleared = product * clear_factor(g)
    combination = Polynomial.zero(arity)
    for cofactor, generator in zip(witness.cofactors, generators, strict=True):
        combination = combination + cofactor * clear_factor(generator)
    laurent_combination = LaurentPolynomial.zero(arity)
    for cofactor, generator in zip(
        witness.laurent_cofactors, generators, strict=True
    ):
        laurent_combination = laurent_combination + cofactor * generator
    return cleared == combination and laurent_combination == g


def is_proper(
    generators: Sequence[LaurentPolynomial],
    order: MonomialOrder | None = None,
    *,
    logger: Logger | None = None,
) -> bool:
    """True iff 1 is not in the ideal.

    Over Q this is the algebraic test only: a proper ideal such as <x^2 + 1>
    may still have no zero with rational coordinates.
    """
    if all(f.is_zero for f in generators):
        return True
    arity = _common_arity(generators, order)
    one = LaurentPolynomial.constant(1, arity)
    return not member_laurent(one, generators, order, logger=logger).member
