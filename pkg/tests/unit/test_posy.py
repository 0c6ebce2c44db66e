"""Unit tests for posy module."""

from __future__ import annotations

from fractions import Fraction

import pytest

from posyring.models import RingContext
from posyring.polycore import ArityMismatchError, Polynomial, ZeroPolynomialError
from posyring.posy import (
    Posynomial,
    atomic_status,
    degree,
    is_unit_posy,
    member_posy,
    ordered_form,
    phi,
    pi,
    principal_generator,
    pull_back,
    to_laurent_image,
    verify_posy_witness,
)
from posyring.parser import parse
from posyring.utils import PosyringError, RingConstraintError

CTX = RingContext(variables=("x",), ring_kind="posy")
CTX2 = RingContext(variables=("x", "y"), ring_kind="posy")
PX = Polynomial.variable(0, 1)


def _p(text: str) -> Posynomial:
    element = parse(text, CTX)
    assert isinstance(element, Posynomial)
    return element


def _p2(text: str) -> Posynomial:
    element = parse(text, CTX2)
    assert isinstance(element, Posynomial)
    return element


def _root_minus_one(denominator: int) -> Posynomial:
    return _p(f"x^(1/{denominator}) - 1")


class TestPosynomial:
    """Tests for the posynomial element class."""

    def test_rational_exponents(self) -> None:
        f = Posynomial({(Fraction(1, 2),): 1, (Fraction(-1, 3),): 2})
        assert len(f) == 2
        assert not f.is_laurent

    def test_laurent_round_trip(self) -> None:
        f = _p("x^-2 + 3*x")
        assert f.is_laurent
        assert Posynomial.from_laurent(f.to_laurent()) == f

    def test_to_laurent_rejects_fractional_exponents(self) -> None:
        with pytest.raises(RingConstraintError):
            _p("x^(1/2)").to_laurent()

    def test_domain_property(self) -> None:
        f = _p("x^(1/2) - x^(1/3)")
        g = _p("x^(2/3) + 1")
        assert not (f * g).is_zero


class TestScaling:
    """Tests for pi, phi and pull_back."""

    def test_pi_is_lcm_of_denominators(self) -> None:
        assert pi([_p("x^(1/2)"), _p("x^(1/3) + 1")]) == 6

    def test_pi_of_laurent_family(self) -> None:
        assert pi([_p("x^-3 + x")]) == 1

    def test_pi_needs_input(self) -> None:
        with pytest.raises(PosyringError, match="at least one"):
            pi([])

    def test_phi_multiplies_exponents(self) -> None:
        assert phi(6, _p("x^(1/2) + x^(1/3)")) == _p("x^3 + x^2")

    def test_phi_is_a_ring_homomorphism(self) -> None:
        f = _p("x^(1/2) - 2")
        g = _p("x^(1/3) + x^-1")
        assert phi(6, f * g) == phi(6, f) * phi(6, g)
        assert phi(6, f + g) == phi(6, f) + phi(6, g)

    def test_phi_composes(self) -> None:
        f = _p("x^(1/6) + 1")
        assert phi(2, phi(3, f)) == phi(6, f)

    def test_phi_rejects_bad_scale(self) -> None:
        with pytest.raises(RingConstraintError, match="positive integer"):
            phi(0, _p("x"))

    def test_pull_back_inverts_phi(self) -> None:
        f = _p("x^(2/5) - 7/3*x^-1")
        assert pull_back(phi(10, f), 10) == f

    def test_laurent_image_at_pi(self) -> None:
        f = _p("x^(1/2) + x^(-1/3)")
        image = to_laurent_image(f, pi([f]))
        assert image.terms.keys() == {(3,), (-2,)}


class TestOrderedForm:
    """Tests for ordered_form, degree and units."""

    def test_ordered_form_increasing(self) -> None:
        f = _p("2*x^(1/2) - x^-1 + 3")
        assert ordered_form(f) == [
            (Fraction(-1), Fraction(-1)),
            (Fraction(0), Fraction(3)),
            (Fraction(1, 2), Fraction(2)),
        ]

    def test_ordered_form_needs_one_variable(self) -> None:
        with pytest.raises(ArityMismatchError):
            ordered_form(_p2("x + y"))

    def test_degree(self) -> None:
        assert degree(_p("x^(1/2) + x^-3")) == Fraction(1, 2)
        assert degree(_p2("x^2*y^(1/3) + y"), 1) == 1

    def test_degree_of_zero(self) -> None:
        with pytest.raises(ZeroPolynomialError):
            degree(Posynomial.zero(1))

    def test_degree_is_additive(self) -> None:
        f = _p("x^(1/2) + 1")
        g = _p("x^(2/3) - x")
        assert degree(f * g) == degree(f) + degree(g)

    def test_units_are_monomials(self) -> None:
        assert is_unit_posy(_p("-3/4*x^(2/7)"))
        assert not is_unit_posy(_p("x^(1/2) + 1"))
        assert not is_unit_posy(Posynomial.zero(1))


class TestMemberPosy:
    """Tests for member_posy."""

    @pytest.mark.parametrize("others", [(3,), (5,), (3, 5), (3, 5, 7)])
    def test_root_of_two_not_generated(self, others: tuple[int, ...]) -> None:
        generators = [_root_minus_one(p) for p in others]
        assert not member_posy(_root_minus_one(2), generators).member

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_chain_strictly_increasing(self, k: int) -> None:
        smaller = _root_minus_one(2**k)
        larger = _root_minus_one(2 ** (k + 1))
        assert member_posy(smaller, [larger]).member
        assert not member_posy(larger, [smaller]).member

    def test_certificate(self) -> None:
        g = _p("x^(1/2) - 1")
        generators = [_p("x^(1/4) - 1")]
        result = member_posy(g, generators, certificate=True)
        assert result.member
        assert result.scale == 4
        assert result.witness is not None
        assert result.witness.cofactors == (_p("x^(1/4) + 1"),)
        assert verify_posy_witness(g, generators, result.witness)

    def test_no_witness_without_request(self) -> None:
        result = member_posy(_p("x - 1"), [_p("x^(1/2) - 1")])
        assert result.member
        assert result.witness is None

    def test_two_variables(self) -> None:
        generators = [_p2("x^(1/2) - 1"), _p2("y - x")]
        assert member_posy(_p2("y^(1/2) - x^(1/2)"), generators).member is False
        assert member_posy(_p2("y - 1"), generators).member

    def test_arity_mismatch(self) -> None:
        with pytest.raises(ArityMismatchError):
            member_posy(_p("x"), [_p2("x - y")])

    def test_broken_witness_rejected(self) -> None:
        g = _p("x^(1/2) - 1")
        generators = [_p("x^(1/4) - 1")]
        witness = member_posy(g, generators, certificate=True).witness
        assert witness is not None
        broken = witness.model_copy(update={"cofactors": (_p("x^(1/4)"),)})
        assert not verify_posy_witness(g, generators, broken)


class TestPrincipalGenerator:
    """Tests for principal_generator."""

    def test_gcd_of_roots(self) -> None:
        generator = principal_generator([_p("x - 1"), _p("x^(1/2) - 1")])
        assert generator == _p("x^(1/2) - 1")

    def test_generator_spans_ideal(self) -> None:
        generators = [_p("x^(1/3) - 1"), _p("x^(1/2) - 1")]
        generator = principal_generator(generators)
        assert generator == _p("x^(1/6) - 1")
        for f in generators:
            assert member_posy(f, [generator]).member
        assert member_posy(generator, generators).member

    def test_coprime_generators_give_unit_ideal(self) -> None:
        generator = principal_generator([_p("x^(1/2) + x"), _p("x^(3/2)")])
        assert generator == 1

    def test_zero_generators_skipped(self) -> None:
        generator = principal_generator([Posynomial.zero(1), _p("x^2 - 1")])
        assert generator == _p("x^2 - 1")

    def test_all_zero_rejected(self) -> None:
        with pytest.raises(ZeroPolynomialError):
            principal_generator([Posynomial.zero(1)])

    def test_empty_rejected(self) -> None:
        with pytest.raises(PosyringError, match="At least one"):
            principal_generator([])

    def test_multivariate_rejected(self) -> None:
        with pytest.raises(ArityMismatchError):
            principal_generator([_p2("x + y")])


class TestAtomicStatus:
    """Tests for atomic_status."""

    def test_eisenstein_proves_atomic(self) -> None:
        verdict = atomic_status(_p("x + 2"), 20)
        assert verdict.status == "atomic"
        assert verdict.prime == 2

    def test_fractional_exponents_scaled_first(self) -> None:
        verdict = atomic_status(_p("x^(1/2) + 2"), 5)
        assert verdict.status == "atomic"
        assert verdict.prime == 2

    def test_square_root_splits(self) -> None:
        verdict = atomic_status(_p("x - 1"), 5)
        assert verdict.status == "not_atomic"
        assert verdict.scale_index == 2
        assert verdict.scaled == PX**2 - 1
        assert verdict.factor == PX - 1
        assert verdict.cofactor == PX + 1

    def test_unknown_within_bound(self) -> None:
        verdict = atomic_status(_p("x^2 + 1"), 2)
        assert verdict.status == "unknown"
        assert verdict.bound == 2

    def test_larger_bound_finds_factor(self) -> None:
        verdict = atomic_status(_p("x^2 + 1"), 3)
        assert verdict.status == "not_atomic"
        assert verdict.scale_index == 3
        assert verdict.factor == PX**2 + 1

    def test_cyclotomic_factor(self) -> None:
        verdict = atomic_status(_p("x^2 + x + 1"), 4)
        assert verdict.status == "not_atomic"
        assert verdict.scale_index == 2
        assert verdict.factor is not None
        assert verdict.cofactor is not None
        assert verdict.factor * verdict.cofactor == verdict.scaled

    def test_units_rejected(self) -> None:
        with pytest.raises(RingConstraintError, match="non-units"):
            atomic_status(_p("3*x^(1/2)"), 5)

    def test_zero_rejected(self) -> None:
        with pytest.raises(RingConstraintError):
            atomic_status(Posynomial.zero(1), 5)

    def test_bound_must_be_positive(self) -> None:
        with pytest.raises(RingConstraintError, match="Bound"):
            atomic_status(_p("x + 2"), 0)
