"""Quality tests for reduced Groebner bases."""

from __future__ import annotations

import random

import pytest

from posyring.oracle import random_polynomial
from posyring.polycore import (
    MonomialOrder,
    Polynomial,
    buchberger,
    reduce,
    s_polynomial,
)

# (arity, instances, max_terms, max_degree); 100 sets in total
GROEBNER_SETS = [(1, 40, 4, 4), (2, 35, 2, 3), (3, 25, 2, 3)]


def _generator_sets(
    seed: int, arity: int, count: int, max_terms: int, max_degree: int
) -> list[list[Polynomial]]:
    rng = random.Random(seed)
    return [
        [
            random_polynomial(rng, arity, max_terms=max_terms, max_degree=max_degree)
            for _ in range(rng.randint(1, 3))
        ]
        for _ in range(count)
    ]


@pytest.mark.parametrize(("arity", "count", "max_terms", "max_degree"), GROEBNER_SETS)
def test_basis_is_groebner_and_canonical(
    arity: int, count: int, max_terms: int, max_degree: int
) -> None:
    # Given seeded random generator sets
    order = MonomialOrder.default(arity)
    rng = random.Random(arity)
    for generators in _generator_sets(
        100 + arity, arity, count, max_terms, max_degree
    ):
        # When computing the reduced basis
        basis = buchberger(generators, order)

        # Then every generator and every S-pair reduces to zero
        for generator in generators:
            assert reduce(generator, basis).is_zero
        elements = basis.elements
        for i in range(len(elements)):
            for j in range(i + 1, len(elements)):
                assert reduce(
                    s_polynomial(elements[i], elements[j], order), basis
                ).is_zero

        # And the basis is monic and does not depend on the presentation
        assert all(
            element.leading_coefficient(order) == 1 for element in elements
        )
        shuffled = list(generators)
        rng.shuffle(shuffled)
        assert buchberger(shuffled, order).elements == elements
        combination = Polynomial.zero(arity)
        for generator in generators:
            multiplier = random_polynomial(rng, arity, max_terms=2, max_degree=1)
            combination = combination + multiplier * generator
        assert buchberger([*generators, combination], order).elements == elements


def test_cofactors_express_the_basis() -> None:
    # Given seeded bivariate generator sets
    order = MonomialOrder.default(2)
    for generators in _generator_sets(7, 2, 20, 3, 2):
        # When tracking cofactors
        basis = buchberger(generators, order, track_cofactors=True)

        # Then each element is the stated combination of the generators
        assert basis.cofactors is not None
        for element, row in zip(basis.elements, basis.cofactors, strict=True):
            combination = Polynomial.zero(2)
            for cofactor, generator in zip(row, generators, strict=True):
                combination = combination + cofactor * generator
            assert combination == element
