"""
Unit tests for the Gaussian rational module

Tests exact arithmetic, parsing and canonical text.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies

from ncfree.errors import DomainError
from ncfree.utils.gaussian import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    format_gaussian,
    format_rational,
    parse_gaussian,
    parse_rational,
)

fractions = strategies.fractions(min_value=-100, max_value=100, max_denominator=50)
gaussians = strategies.builds(GaussianRational, fractions, fractions)


# ============================================================================
# Rationals
# ============================================================================

class TestRationals:
    """Test p/q parsing and formatting."""

    def test_parse_fraction(self):
        assert parse_rational("3/4") == Fraction(3, 4)

    def test_parse_integer(self):
        assert parse_rational(" -7 ") == Fraction(-7)

    def test_parse_rejects_float(self):
        with pytest.raises(DomainError, match="p/q"):
            parse_rational("0.5")

    def test_parse_rejects_zero_denominator(self):
        with pytest.raises(DomainError, match="Invalid rational"):
            parse_rational("1/0")

    def test_parse_rejects_empty(self):
        with pytest.raises(ValueError, match="Empty"):
            parse_rational("  ")

    def test_format_always_has_denominator(self):
        assert format_rational(Fraction(2)) == "2/1"
        assert format_rational(Fraction(-10, 4)) == "-5/2"


# ============================================================================
# Arithmetic
# ============================================================================

class TestArithmetic:
    """Test field operations."""

    def test_i_squared(self):
        assert I * I == -ONE

    def test_mixed_operands(self):
        assert GaussianRational(1, 2) + 1 == GaussianRational(2, 2)
        assert 3 * GaussianRational(Fraction(1, 3)) == 1
        assert 1 - GaussianRational(0, 1) == GaussianRational(1, -1)

    def test_division(self):
        assert ONE / GaussianRational(1, 1) == GaussianRational(Fraction(1, 2), Fraction(-1, 2))

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_power(self):
        assert GaussianRational(1, 1) ** 4 == -4
        assert I ** 0 == ONE

    def test_negative_power_rejected(self):
        with pytest.raises(DomainError):
            I ** -1

    def test_truthiness(self):
        assert not ZERO
        assert I

    def test_equal_values_hash_alike(self):
        assert hash(GaussianRational(Fraction(1, 2))) == hash(Fraction(1, 2))

    def test_immutable(self):
        with pytest.raises(AttributeError):
            ONE.re = Fraction(2)

    def test_coerce_rejects_float(self):
        with pytest.raises(DomainError, match="exact coefficient"):
            GaussianRational.coerce(0.5)

    @settings(max_examples=60, deadline=None)
    @given(gaussians, gaussians, gaussians)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a - a == ZERO

    @settings(max_examples=60, deadline=None)
    @given(gaussians, gaussians)
    def test_division_inverts_multiplication(self, a, b):
        if b:
            assert (a * b) / b == a

    @settings(max_examples=60, deadline=None)
    @given(gaussians)
    def test_conjugate_norm_is_real(self, a):
        assert (a * a.conjugate()).is_real


# ============================================================================
# Text
# ============================================================================

class TestText:
    """Test parse_gaussian / format_gaussian."""

    def test_parse_real(self):
        assert parse_gaussian("1/2") == GaussianRational(Fraction(1, 2))

    def test_parse_complex(self):
        assert parse_gaussian("1/2 - 3/4 i") == GaussianRational(Fraction(1, 2), Fraction(-3, 4))

    def test_parse_pure_imaginary(self):
        assert parse_gaussian("i") == I
        assert parse_gaussian("-i") == -I
        assert parse_gaussian("2/3i") == GaussianRational(0, Fraction(2, 3))

    def test_parse_negative_real_part(self):
        assert parse_gaussian("-1/2+i") == GaussianRational(Fraction(-1, 2), 1)

    def test_format(self):
        assert format_gaussian(GaussianRational(1, -2)) == "1/1-2/1i"
        assert format_gaussian(GaussianRational(Fraction(-1, 3))) == "-1/3"

    def test_str(self):
        assert str(GaussianRational(Fraction(1, 2), 1)) == "1/2+1i"
        assert str(GaussianRational(0, -1)) == "-1i"

    @settings(max_examples=80, deadline=None)
    @given(gaussians)
    def test_format_parse_identity(self, a):
        assert parse_gaussian(format_gaussian(a)) == a
