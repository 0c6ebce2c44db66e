"""Independent membership oracles and seeded random instances.

``member_by_linear_algebra`` searches cofactors of bounded degree by exact
Gaussian elimination over Q; it can only confirm membership. In one variable
the Laurent ring is a principal ideal domain and ``member_by_euclid`` decides
membership exactly through a GCD. Both avoid Groebner bases so they can
cross-check ``member_laurent``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict, Field

from .laurent import LaurentPolynomial, clear_factor, member_laurent
from .logging import Events
from .models import OracleConfig
from .polycore import ArityMismatchError, Polynomial
from .posy import Posynomial
from .univariate import divides, gcd_all
from .utils import PosyringError

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from .logging import Logger

COEFFICIENTS: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(3),
    Fraction(-3),
    Fraction(1, 2),
    Fraction(-1, 2),
)
EXPONENT_RANGE = 3


class EchelonSpan:
    """Row-echelon span of sparse vectors over Q.

    Each stored row is keyed by its pivot, the greatest monomial of the row in
    the default lex order, and normalized so the pivot coefficient is 1.
    """

    def __init__(self) -> None:
        self._rows: dict[tuple, dict[tuple, Fraction]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: dict[tuple, Fraction]) -> dict[tuple, Fraction]:
        vector = dict(vector)
        while True:
            pivots = [monomial for monomial in vector if monomial in self._rows]
            if not pivots:
                return vector
            pivot = max(pivots, key=lambda monomial: monomial[::-1])
            factor = vector[pivot]
            for monomial, coefficient in self._rows[pivot].items():
                value = vector.get(monomial, 0) - factor * coefficient
                if value:
                    vector[monomial] = value
                else:
                    vector.pop(monomial, None)

    def add(self, vector: dict[tuple, Fraction]) -> bool:
        """Insert a vector; False when it was already in the span."""
        reduced = self.reduce(vector)
        if not reduced:
            return False
        pivot = max(reduced, key=lambda monomial: monomial[::-1])
        inverse = 1 / reduced[pivot]
        self._rows[pivot] = {
            monomial: coefficient * inverse for monomial, coefficient in reduced.items()
        }
        return True

    def contains(self, vector: dict[tuple, Fraction]) -> bool:
        return not self.reduce(vector)


def _monomials_up_to(arity: int, degree: int) -> Iterator[tuple[int, ...]]:
    for exponents in product(range(degree + 1), repeat=arity):
        if sum(exponents) <= degree:
            yield exponents


def _check_arity(
    g: LaurentPolynomial, generators: Sequence[LaurentPolynomial]
) -> None:
    for f in generators:
        if f.arity != g.arity:
            raise ArityMismatchError(
                f"Generator arity {f.arity} does not match arity {g.arity}"
            )


def member_by_linear_algebra(
    g: LaurentPolynomial,
    generators: Sequence[LaurentPolynomial],
    config: OracleConfig | None = None,
) -> bool:
    """True when (x1*...*xn)^lam * F(g) = sum(h_i * F(f_i)) is solvable
    with lam <= lambda_max and every h_i of total degree <= degree_max.

    False only means no such identity exists within the bounds.
    """
    config = config or OracleConfig()
    _check_arity(g, generators)
    if g.is_zero:
        return True
    arity = g.arity
    images = [clear_factor(f) for f in generators if not f.is_zero]

    span = EchelonSpan()
    for shift in _monomials_up_to(arity, config.degree_max):
        for image in images:
            span.add(dict(image.mul_term(shift).terms))

    target = clear_factor(g)
    for power in range(config.lambda_max + 1):
        if span.contains(dict(target.mul_term((power,) * arity).terms)):
            return True
    return False


def member_by_euclid(
    g: LaurentPolynomial, generators: Sequence[LaurentPolynomial]
) -> bool:
    """Exact membership in one variable through the GCD of the cleared generators."""
    _check_arity(g, generators)
    if g.arity != 1:
        raise PosyringError("The Euclid oracle needs exactly one variable")
    common = gcd_all(clear_factor(f) for f in generators)
    # F(f) has a nonzero constant term, so the GCD carries no power of x.
    return divides(common, clear_factor(g))


class OracleInstance(BaseModel):
    """Membership query g in <generators> over the Laurent ring."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    g: LaurentPolynomial = Field(..., description="Candidate member")
    generators: tuple[LaurentPolynomial, ...] = Field(
        ..., description="Ideal generators"
    )

    @property
    def arity(self) -> int:
        return self.g.arity


class OracleCheck(BaseModel):
    """Answers of every membership procedure on one instance."""

    model_config = ConfigDict(frozen=True)

    groebner: bool = Field(..., description="Answer of the saturation path")
    linear_algebra: bool = Field(
        ..., description="Bounded linear-algebra answer (one-sided)"
    )
    euclid: bool | None = Field(None, description="Euclid answer for one variable")

    @property
    def consistent(self) -> bool:
        if self.linear_algebra and not self.groebner:
            return False
        return self.euclid is None or self.euclid == self.groebner


def check_instance(
    instance: OracleInstance,
    config: OracleConfig | None = None,
    *,
    logger: Logger | None = None,
) -> OracleCheck:
    groebner = member_laurent(instance.g, instance.generators).member
    linear_algebra = member_by_linear_algebra(
        instance.g, instance.generators, config
    )
    euclid = None
    if instance.arity == 1:
        euclid = member_by_euclid(instance.g, instance.generators)
    check = OracleCheck(
        groebner=groebner, linear_algebra=linear_algebra, euclid=euclid
    )
    if logger is not None:
        logger.debug(
            Events.ORACLE_CHECKED,
            "Oracle instance checked",
            phase="oracle",
            data={
                "groebner": groebner,
                "linear_algebra": linear_algebra,
                "euclid": euclid,
                "consistent": check.consistent,
            },
        )
    return check


def random_laurent(
    rng: random.Random,
    arity: int,
    *,
    max_terms: int = 4,
    min_terms: int = 1,
    exponent_range: int = EXPONENT_RANGE,
) -> LaurentPolynomial:
    """Random nonzero Laurent polynomial with between min_terms and max_terms terms."""
    count = rng.randint(min_terms, max_terms)
    terms: dict[tuple[int, ...], Fraction] = {}
    while len(terms) < count:
        exponents = tuple(
            rng.randint(-exponent_range, exponent_range) for _ in range(arity)
        )
        terms[exponents] = rng.choice(COEFFICIENTS)
    return LaurentPolynomial(terms, arity)


def random_polynomial(
    rng: random.Random, arity: int, *, max_terms: int = 4, max_degree: int = 4
) -> Polynomial:
    count = rng.randint(1, max_terms)
    terms: dict[tuple[int, ...], Fraction] = {}
    while len(terms) < count:
        exponents = tuple(rng.randint(0, max_degree) for _ in range(arity))
        if sum(exponents) > max_degree:
            continue
        terms[exponents] = rng.choice(COEFFICIENTS)
    return Polynomial(terms, arity)


def random_posynomial(
    rng: random.Random,
    arity: int,
    *,
    max_terms: int = 4,
    denominators: Sequence[int] = (1, 2, 3, 4, 6),
) -> Posynomial:
    count = rng.randint(1, max_terms)
    terms: dict[tuple[Fraction, ...], Fraction] = {}
    while len(terms) < count:
        exponents = tuple(
            Fraction(
                rng.randint(-EXPONENT_RANGE, EXPONENT_RANGE), rng.choice(denominators)
            )
            for _ in range(arity)
        )
        terms[exponents] = rng.choice(COEFFICIENTS)
    return Posynomial(terms, arity)


def random_generator_set(
    rng: random.Random, arity: int, *, max_generators: int = 3, max_terms: int = 4
) -> tuple[LaurentPolynomial, ...]:
    count = rng.randint(1, max_generators)
    return tuple(random_laurent(rng, arity, max_terms=max_terms) for _ in range(count))


def random_laurent_instance(
    rng: random.Random,
    arity: int | None = None,
    *,
    max_generators: int = 3,
    max_terms: int = 4,
) -> OracleInstance:
    """Random instance; about half are members by construction."""
    arity = arity or rng.randint(1, 3)
    generators = random_generator_set(
        rng, arity, max_generators=max_generators, max_terms=max_terms
    )
    if rng.random() < 0.5:
        g = LaurentPolynomial.zero(arity)
        for f in generators:
            multiplier = random_laurent(rng, arity, max_terms=2, exponent_range=1)
            g = g + multiplier * f
    else:
        g = random_laurent(rng, arity, max_terms=max_terms)
    return OracleInstance(g=g, generators=generators)


def random_instances(
    seed: int,
    count: int,
    arity: int | None = None,
    *,
    max_generators: int = 3,
    max_terms: int = 4,
) -> list[OracleInstance]:
    rng = random.Random(seed)
    return [
        random_laurent_instance(
            rng, arity, max_generators=max_generators, max_terms=max_terms
        )
        for _ in range(count)
    ]
