"""Unit tests for univariate module."""

from __future__ import annotations

from fractions import Fraction

import pytest

from posyring.polycore import Polynomial, ZeroPolynomialError
from posyring.univariate import (
    coefficients,
    divides,
    eisenstein_prime,
    evaluate,
    exact_quotient,
    find_factor,
    from_coefficients,
    gcd,
    gcd_all,
    integer_coefficients,
    is_irreducible_certified,
    poly_divmod,
    rational_roots,
)
from posyring.utils import PosyringError

X = Polynomial.variable(0, 1)


class TestDenseForm:
    """Tests for dense coefficient conversions."""

    def test_coefficients(self) -> None:
        assert coefficients(X**3 - 2 * X) == [0, -2, 0, 1]

    def test_zero_has_no_coefficients(self) -> None:
        assert coefficients(Polynomial.zero(1)) == []

    def test_from_coefficients(self) -> None:
        assert from_coefficients([1, 0, 3]) == 3 * X**2 + 1
        assert from_coefficients([0, 0]).is_zero

    def test_rejects_multivariate(self) -> None:
        with pytest.raises(PosyringError, match="univariate"):
            coefficients(Polynomial.variable(0, 2))


class TestEuclid:
    """Tests for division and GCDs."""

    def test_divmod(self) -> None:
        quotient, remainder = poly_divmod(X**3 + 1, X**2)
        assert quotient == X
        assert remainder == 1

    def test_gcd_is_monic(self) -> None:
        assert gcd(2 * X**2 - 2, 3 * X**3 - 3) == X - 1

    def test_gcd_of_zeros(self) -> None:
        assert gcd(Polynomial.zero(1), Polynomial.zero(1)).is_zero

    def test_gcd_all(self) -> None:
        assert gcd_all([X**4 - 1, X**6 - 1, X**2 + X - 2]) == X - 1
        assert gcd_all([]).is_zero

    def test_coprime_gcd_is_one(self) -> None:
        assert gcd(X - 1, X - 2) == 1

    def test_exact_quotient(self) -> None:
        assert exact_quotient(X**2 - 1, X + 1) == X - 1
        with pytest.raises(PosyringError, match="remainder"):
            exact_quotient(X**2, X + 1)

    def test_divides(self) -> None:
        assert divides(X - 1, X**5 - 1)
        assert not divides(X + 1, X**5 - 1)
        assert divides(Polynomial.zero(1), Polynomial.zero(1))
        assert not divides(Polynomial.zero(1), X)


class TestIntegerForm:
    """Tests for integer_coefficients and rational roots."""

    def test_primitive_positive_lead(self) -> None:
        f = Polynomial({(1,): Fraction(-1, 2), (0,): Fraction(1, 3)})
        assert integer_coefficients(f) == [-2, 3]

    def test_zero_has_no_primitive_form(self) -> None:
        with pytest.raises(ZeroPolynomialError):
            integer_coefficients(Polynomial.zero(1))

    def test_rational_roots(self) -> None:
        assert rational_roots(X**2 - 1) == [-1, 1]
        assert rational_roots(2 * X**2 - 3 * X + 1) == [Fraction(1, 2), 1]

    def test_zero_root(self) -> None:
        assert rational_roots(X**3 - X**2) == [0, 1]

    def test_no_rational_roots(self) -> None:
        assert rational_roots(X**2 - 2) == []

    def test_evaluate(self) -> None:
        assert evaluate(X**2 + X + 1, Fraction(1, 2)) == Fraction(7, 4)


class TestIrreducibility:
    """Tests for Eisenstein and the factor search."""

    def test_eisenstein_direct(self) -> None:
        assert eisenstein_prime(X + 2) == 2
        assert eisenstein_prime(X**2 - 2) == 2
        assert eisenstein_prime(X**3 + 9 * X + 3) == 3

    def test_eisenstein_on_reversal(self) -> None:
        assert eisenstein_prime(2 * X + 1) == 2

    def test_eisenstein_fails(self) -> None:
        assert eisenstein_prime(X**2 + X + 1) is None
        assert eisenstein_prime(X**2 + 4) is None

    def test_linear_has_no_factor(self) -> None:
        assert find_factor(X - 1) is None

    def test_rational_root_factor_uses_largest_root(self) -> None:
        assert find_factor(X**2 - 1) == X - 1

    def test_small_degree_without_roots(self) -> None:
        assert find_factor(X**2 + 1) is None
        assert find_factor(X**3 - 2) is None

    def test_binomial_power_factor(self) -> None:
        assert find_factor(X**4 - 4) == X**2 - 2
        assert find_factor(X**6 + 1) == X**2 + 1

    def test_sophie_germain_factor(self) -> None:
        assert find_factor(X**4 + 4) == X**2 + 2 * X + 2

    def test_cyclotomic_factor(self) -> None:
        factor = find_factor(X**4 + X**2 + 1)
        assert factor is not None
        assert divides(factor, X**4 + X**2 + 1)
        assert 0 < factor.total_degree < 4

    def test_self_reciprocal_factor(self) -> None:
        palindrome = X**2 + 3 * X + 1
        assert find_factor(palindrome * (X**2 + 5 * X + 7)) == palindrome

    def test_irreducible_binomial_has_no_factor(self) -> None:
        assert find_factor(X**4 + 1) is None

    def test_certified_irreducible(self) -> None:
        assert is_irreducible_certified(X - 5)
        assert is_irreducible_certified(X**2 + 1)
        assert is_irreducible_certified(X**5 - 2)
        assert not is_irreducible_certified(X**2 - 1)
        assert not is_irreducible_certified(X**4 + 1)
