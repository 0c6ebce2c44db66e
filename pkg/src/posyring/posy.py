"""Posynomials with rational exponents over Q.

Every finitely generated question about Pos(Q, Q)[x] is moved into the
Laurent ring by the monomorphism phi(m, .), which multiplies all exponents by
m; ``pi`` gives the least m that makes a family Laurent.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import TYPE_CHECKING, Literal

from pydantic import BaseModel, ConfigDict, Field

from .laurent import (
    LaurentPolynomial,
    LaurentWitness,
    MembershipResult,
    clear_factor,
    member_laurent,
    verify_laurent_witness,
)
from .logging import Events
from .polycore import ArityMismatchError, Polynomial, TermAlgebra, ZeroPolynomialError
from .univariate import eisenstein_prime, exact_quotient, find_factor, gcd_all
from .utils import PosyringError, RingConstraintError, as_rational

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .logging import Logger
    from .polycore import MonomialOrder


class Posynomial(TermAlgebra):
    """Element of Pos(Q, Q)[x1..xn]: exponents are arbitrary rationals."""

    __slots__ = ()

    @classmethod
    def _coerce_exponents(cls, exponents: tuple) -> tuple[Fraction, ...]:
        try:
            return tuple(as_rational(value) for value in exponents)
        except TypeError as exc:
            raise RingConstraintError(f"Invalid exponent vector {exponents}") from exc

    @classmethod
    def from_laurent(cls, f: LaurentPolynomial) -> Posynomial:
        return cls(f.terms.items(), f.arity)

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> Posynomial:
        return cls(f.terms.items(), f.arity)

    def to_laurent(self) -> LaurentPolynomial:
        """The same element as a Laurent polynomial; fails on fractional exponents."""
        return LaurentPolynomial(self.terms.items(), self.arity)

    @property
    def is_laurent(self) -> bool:
        return all(value.denominator == 1 for exps in self.terms for value in exps)


class PosyWitness(BaseModel):
    """Certificate of g = sum(u_i * f_i) in the posynomial ring.

    ``laurent`` certifies the same identity for the images under phi(scale, .).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scale: int = Field(..., ge=1, description="pi of g and the generators")
    laurent: LaurentWitness = Field(..., description="Witness over the scaled images")
    cofactors: tuple[Posynomial, ...] = Field(
        ..., description="Posynomial cofactors u_i"
    )


class PosyMembershipResult(BaseModel):
    """Answer of a posynomial membership query."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    member: bool = Field(..., description="Whether g lies in the ideal")
    scale: int = Field(..., ge=1, description="pi of g and the generators")
    witness: PosyWitness | None = Field(
        None, description="Certificate, when requested and member is true"
    )
    laurent: MembershipResult = Field(
        ..., description="Result of the scaled Laurent query"
    )


class AtomicityVerdict(BaseModel):
    """Three-valued answer of the bounded atomicity check."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: Literal["atomic", "not_atomic", "unknown"] = Field(
        ..., description="Verdict"
    )
    prime: int | None = Field(None, description="Eisenstein prime for atomic")
    scale_index: int | None = Field(
        None, description="n whose scaled polynomial factors, for not_atomic"
    )
    scaled: Polynomial | None = Field(
        None, description="F(phi(m*n, f)) for not_atomic"
    )
    factor: Polynomial | None = Field(None, description="Nontrivial monic factor")
    cofactor: Polynomial | None = Field(None, description="scaled / factor")
    bound: int = Field(..., ge=1, description="Largest n examined")


def pi(fs: Sequence[Posynomial]) -> int:
    """Least m with every phi(m, f) Laurent: LCM of all exponent denominators."""
    if not fs:
        raise PosyringError("pi needs at least one posynomial")
    result = 1
    for f in fs:
        for exponents in f.terms:
            for value in exponents:
                result = lcm(result, value.denominator)
    return result


def _check_scale(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise RingConstraintError(f"Scale factor must be a positive integer, got {m}")


def phi(m: int, f: Posynomial) -> Posynomial:
    """Multiply every exponent by m."""
    _check_scale(m)
    return Posynomial._build(
        {
            tuple(value * m for value in exponents): coefficient
            for exponents, coefficient in f.terms.items()
        },
        f.arity,
    )


def pull_back(f: Posynomial, s: int) -> Posynomial:
    """Inverse of phi(s, .): divide every exponent by s."""
    _check_scale(s)
    return Posynomial._build(
        {
            tuple(value / s for value in exponents): coefficient
            for exponents, coefficient in f.terms.items()
        },
        f.arity,
    )


def to_laurent_image(f: Posynomial, m: int) -> LaurentPolynomial:
    return phi(m, f).to_laurent()


def _check_univariate(f: Posynomial) -> None:
    if f.arity != 1:
        raise ArityMismatchError(f"Expected one variable, got arity {f.arity}")


def ordered_form(f: Posynomial) -> list[tuple[Fraction, Fraction]]:
    """(exponent, coefficient) pairs with strictly increasing exponents."""
    _check_univariate(f)
    return sorted((exps[0], coefficient) for exps, coefficient in f.terms.items())


def degree(f: Posynomial, index: int = 0) -> Fraction:
    """Largest exponent of the given variable."""
    if f.is_zero:
        raise ZeroPolynomialError("The zero posynomial has no degree")
    if not 0 <= index < f.arity:
        raise PosyringError(f"Variable index {index} outside arity {f.arity}")
    return max(exps[index] for exps in f.terms)


def is_unit_posy(f: Posynomial) -> bool:
    return f.is_monomial


def member_posy(
    g: Posynomial,
    generators: Sequence[Posynomial],
    order: MonomialOrder | None = None,
    *,
    certificate: bool = False,
    logger: Logger | None = None,
) -> PosyMembershipResult:
    """Decide g in <generators> by scaling everything into the Laurent ring."""
    generators = tuple(generators)
    for f in generators:
        if f.arity != g.arity:
            raise ArityMismatchError(
                f"Generator arity {f.arity} does not match arity {g.arity}"
            )
    scale = pi([g, *generators])
    laurent_result = member_laurent(
        to_laurent_image(g, scale),
        [to_laurent_image(f, scale) for f in generators],
        order,
        certificate=certificate,
        logger=logger,
    )
    witness = None
    if laurent_result.witness is not None:
        witness = PosyWitness(
            scale=scale,
            laurent=laurent_result.witness,
            cofactors=tuple(
                pull_back(Posynomial.from_laurent(cofactor), scale)
                for cofactor in laurent_result.witness.laurent_cofactors
            ),
        )
    if logger is not None:
        logger.debug(
            Events.MEMBERSHIP_DECIDED,
            "Posynomial membership decided",
            phase="member",
            data={"member": laurent_result.member, "scale": scale},
        )
    return PosyMembershipResult(
        member=laurent_result.member,
        scale=scale,
        witness=witness,
        laurent=laurent_result,
    )


def verify_posy_witness(
    g: Posynomial, generators: Sequence[Posynomial], witness: PosyWitness
) -> bool:
    if len(witness.cofactors) != len(generators):
        return False
    images = [to_laurent_image(f, witness.scale) for f in generators]
    if not verify_laurent_witness(
        to_laurent_image(g, witness.scale), images, witness.laurent
    ):
        return False
    combination = Posynomial.zero(g.arity)
    for cofactor, generator in zip(witness.cofactors, generators, strict=True):
        combination = combination + cofactor * generator
    return combination == g


def principal_generator(generators: Sequence[Posynomial]) -> Posynomial:
    """Single generator of a univariate ideal.

    With s = pi(generators) this is the monic GCD of the cleared images
    F(phi(s, f_i)) pulled back by 1/s, so F(phi(s, g)) equals that GCD.
    """
    if not generators:
        raise PosyringError("At least one generator is required")
    for f in generators:
        _check_univariate(f)
    if all(f.is_zero for f in generators):
        raise ZeroPolynomialError("All generators are zero")
    scale = pi(generators)
    common = gcd_all(
        clear_factor(to_laurent_image(f, scale)) for f in generators
    )
    return pull_back(Posynomial.from_polynomial(common), scale)


def _stretch(f: Polynomial, n: int) -> Polynomial:
    # f(x^n)
    return Polynomial(
        (((exps[0] * n,), coefficient) for exps, coefficient in f.terms.items()), 1
    )


def atomic_status(
    f: Posynomial, bound: int, *, logger: Logger | None = None
) -> AtomicityVerdict:
    """Bounded atomicity check of a univariate posynomial.

    An Eisenstein prime for P = F(phi(pi(f), f)) or for its reversal proves f
    atomic, since F(phi(pi(f) * n, f)) = P(x^n) stays Eisenstein for every n.
    Otherwise P(x^n) is searched for a factor for n = 1..bound.

    Raises:
        RingConstraintError: If f is zero or a unit.
    """
    _check_univariate(f)
    if isinstance(bound, bool) or bound < 1:
        raise RingConstraintError(f"Bound must be a positive integer, got {bound}")
    if f.is_zero or is_unit_posy(f):
        raise RingConstraintError("Atomicity is defined for nonzero non-units only")

    base = clear_factor(to_laurent_image(f, pi([f])))
    prime = eisenstein_prime(base)
    if prime is not None:
        verdict = AtomicityVerdict(status="atomic", prime=prime, bound=bound)
    else:
        verdict = AtomicityVerdict(status="unknown", bound=bound)
        for n in range(1, bound + 1):
            scaled = _stretch(base, n)
            factor = find_factor(scaled)
            if factor is None:
                continue
            verdict = AtomicityVerdict(
                status="not_atomic",
                scale_index=n,
                scaled=scaled,
                factor=factor,
                cofactor=exact_quotient(scaled, factor),
                bound=bound,
            )
            break
    if logger is not None:
        logger.debug(
            Events.ATOMICITY_CHECKED,
            "Atomicity checked",
            phase="atomic",
            data={"status": verdict.status, "bound": bound},
        )
    return verdict
