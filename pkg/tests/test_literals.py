"""
Unit tests for partition and epsilon literals
"""

import pytest

from ncfree.core.ncpart import Partition
from ncfree.errors import DomainError, LiteralSyntaxError
from ncfree.utils.literals import format_eps, format_partition, parse_eps, parse_partition


class TestPartitionLiterals:
    """Test the brace grammar."""

    def test_parse_canonicalizes(self):
        pi = parse_partition("{7}{6,8}{2,3}{5,4,1}")
        assert format_partition(pi) == "{1,4,5}{2,3}{6,8}{7}"

    def test_whitespace_ignored(self):
        assert parse_partition(" { 1 , 3 } { 2 } ") == Partition(3, [[1, 3], [2]])

    def test_explicit_ground_set(self):
        assert parse_partition("{1,2}", 2).n == 2

    def test_empty_block(self):
        with pytest.raises(LiteralSyntaxError, match="Empty block"):
            parse_partition("{1}{}")

    def test_stray_text(self):
        with pytest.raises(LiteralSyntaxError, match="Unexpected text"):
            parse_partition("{1,2}x")

    def test_non_integer(self):
        with pytest.raises(LiteralSyntaxError, match="Non-integer"):
            parse_partition("{1,a}")

    def test_crossing_rejected(self):
        with pytest.raises(DomainError, match="crossing"):
            parse_partition("{1,3}{2,4}")

    def test_syntax_error_is_value_error(self):
        with pytest.raises(ValueError):
            parse_partition("1,2")


class TestEpsLiterals:
    """Test epsilon strings."""

    def test_packed(self):
        assert parse_eps("1212") == (1, 2, 1, 2)

    def test_comma_separated(self):
        assert parse_eps("1, 2, 2") == (1, 2, 2)

    def test_bad_letter(self):
        with pytest.raises(LiteralSyntaxError, match="'3'"):
            parse_eps("123")

    def test_empty(self):
        with pytest.raises(LiteralSyntaxError, match="Empty"):
            parse_eps(" ")

    def test_format(self):
        assert format_eps((1, 1, 2)) == "112"
