"""
Unit tests for epsilon strings and the C_Q / C_R complements

Tests the circular layout, the complementation maps, eps-alternating
partitions and the NC(m) sums for interleaved monomials.
"""

import random
from dataclasses import replace

import pytest

from ncfree.core.epscomp import (
    EpsString,
    balanced_eps_strings,
    build_layout,
    check_interleaving_space,
    cq,
    cr,
    enumerate_eps_alternating,
    eps_strings,
    eq72_rhs,
    eq86_rhs,
    eq87_rhs,
    family_word,
    insertion_positions,
    interleave_noncrossing,
    is_eps_alternating,
    lambdas,
    prop_811_conditions,
    red_matching,
    verify_eq72_73,
    x_word_sides,
    y_word_sides,
    verify_prop_811,
    x_word,
    y_word,
)
from ncfree.core.freespace import FreeSpace, m_from_r, random_tracial_series
from ncfree.core.ncpart import Partition, enumerate_nc, kreweras, refinement_leq
from ncfree.core.ncseries import NCSeries
from ncfree.core.rdiagonal import circular_pair_r
from ncfree.errors import CapacityError, DomainError
from ncfree.utils.literals import parse_partition


def E(text: str) -> EpsString:
    return EpsString(tuple(int(c) for c in text))


def P(text: str) -> Partition:
    return parse_partition(text)


@pytest.fixture
def free_pairs():
    """(a1, a2) circular pair free from a random tracial pair (p1, p2)."""
    p_series = random_tracial_series(2, 8, random.Random(11))
    return FreeSpace(
        [["a1", "a2"], ["p1", "p2"]], [circular_pair_r(8), p_series], tracial=True
    )


# ============================================================================
# Strings and layout
# ============================================================================

class TestEpsString:
    """Test the string type and its enumerations."""

    def test_counts(self):
        eps = E("1212")
        assert (eps.m, eps.n, eps.balanced) == (4, 2, True)
        assert str(eps) == "1212"
        assert not E("112").balanced

    def test_must_start_with_one(self):
        with pytest.raises(DomainError, match="start with 1"):
            E("21")

    def test_bad_letter(self):
        with pytest.raises(DomainError, match="1 or 2"):
            EpsString((1, 3))

    def test_empty(self):
        with pytest.raises(DomainError, match="non-empty"):
            EpsString(())

    def test_lambdas(self):
        assert lambdas(E("1221")) == (-1, 1, 1, -1)

    def test_enumerations(self):
        assert len(eps_strings(4)) == 8
        assert [str(e) for e in balanced_eps_strings(4)] == ["1122", "1212", "1221"]
        assert balanced_eps_strings(3) == []

    def test_layout_order(self):
        layout = build_layout(E("1212"))
        assert layout.slots == 12
        assert layout.order() == ["P1", "Q1", "Q2", "P2", "P3", "Q3", "Q4", "P4"]
        assert layout.red == (1, 3)
        assert layout.red_label(3) == 2
        assert layout.red_label(2) is None


# ============================================================================
# Complements
# ============================================================================

class TestComplements:
    """Test C_Q and C_R."""

    def test_worked_example(self):
        sigma = P("{1,2,3,4}")
        assert cq(sigma, E("1212")) == P("{1,2}{3,4}")
        assert cr(sigma, E("1212")) == P("{1}{2}")

    def test_nested_pairs(self):
        assert cq(P("{1,4}{2,3}"), E("1212")) == P("{1,2,3,4}")

    @pytest.mark.parametrize("m", range(1, 7))
    def test_all_ones_is_kreweras(self, m):
        eps = EpsString((1,) * m)
        for sigma in enumerate_nc(m):
            assert cq(sigma, eps) == kreweras(sigma)
            assert cr(sigma, eps) == kreweras(sigma)

    def test_singletons_cut_nothing(self):
        for eps in eps_strings(4):
            assert cq(Partition.singletons(4), eps) == Partition.full(4)

    def test_size_mismatch(self):
        with pytest.raises(DomainError, match="eps of length 3"):
            cq(P("{1,2}"), E("121"))

    @pytest.mark.parametrize("m", range(1, 6))
    def test_red_matching(self, m):
        for eps in eps_strings(m):
            for sigma in enumerate_nc(m):
                pairs = red_matching(sigma, eps)
                reds = sorted(block for _, block in pairs if block)
                assert reds == sorted(cr(sigma, eps).blocks)

    @pytest.mark.parametrize("m", range(1, 5))
    def test_interleaving(self, m):
        for eps in eps_strings(m):
            parts = enumerate_nc(m)
            for sigma in parts:
                upper = cq(sigma, eps)
                for tau in parts:
                    assert interleave_noncrossing(sigma, tau, eps) == refinement_leq(tau, upper)

    def test_insertion_positions(self):
        assert insertion_positions(E("12")) == ((1, 4), (2, 3))
        assert insertion_positions(E("11")) == ((1, 3), (2, 4))


# ============================================================================
# Eps-alternating partitions
# ============================================================================

class TestEpsAlternating:
    """Test eps-alternating partitions and their characterization."""

    def test_examples(self):
        assert is_eps_alternating(P("{1,4}{2,3}"), E("1212"))
        assert not is_eps_alternating(P("{1,2}{3}{4}"), E("1212"))

    def test_enumeration(self):
        assert enumerate_eps_alternating(E("12")) == [P("{1,2}")]
        assert len(enumerate_eps_alternating(E("1212"))) == 3
        assert enumerate_eps_alternating(E("1122")) == [P("{1,4}{2,3}")]
        assert enumerate_eps_alternating(E("1111")) == []

    @pytest.mark.parametrize("m", [2, 4, 6])
    def test_characterization(self, m):
        for eps in balanced_eps_strings(m):
            for sigma in enumerate_nc(m):
                assert verify_prop_811(sigma, eps)

    def test_conditions_reject_singletons(self):
        assert not prop_811_conditions(P("{1}{2}"), E("12"))

    def test_unbalanced_rejected(self):
        with pytest.raises(DomainError, match="not balanced"):
            verify_prop_811(P("{1,2,3}"), E("112"))


# ============================================================================
# NC(m) sums
# ============================================================================

class TestSums:
    """Test the sums behind the interleaved moment formulas."""

    def test_family_word(self):
        assert family_word(E("1212"), [1, 1, 2, 2]) == (1, 2, 3, 4)

    def test_family_word_errors(self):
        with pytest.raises(DomainError, match="2 heights"):
            family_word(E("121"), [1, 1])
        with pytest.raises(DomainError, match="positive"):
            family_word(E("12"), [0, 1])

    def test_words_of_elements(self):
        eps = E("12")
        assert x_word(eps, "a1", "a2", "p1", "p2") == [("a1", "p1"), ("p2", "a2")]
        assert y_word(eps, "a1", "a2", "p1", "p2") == [("a1", "p1", "p2"), ("a2",)]

    def test_rhs_needs_cap(self):
        small = NCSeries(2, 2)
        with pytest.raises(CapacityError, match="needs 4"):
            eq72_rhs(E("1212"), small, small)

    @pytest.mark.parametrize("eps", ["12", "1212", "1122"])
    def test_eq87_is_moment_cumulant_sum(self, eps):
        eps = E(eps)
        r = random_tracial_series(4, 4, random.Random(5))
        moments = m_from_r(r).series
        for heights in [(1,) * eps.m, (1, 2) * (eps.m // 2)]:
            word = family_word(eps, heights)
            assert eq87_rhs(eps, heights, r) == moments.coef(word)

    def test_eq86_small(self):
        eps = E("12")
        assert eq86_rhs(eps, (1, 1), NCSeries(2, 2, {(1, 2): 1})) == 1
        assert eq86_rhs(eps, (1, 1), NCSeries(2, 2, {(1,): 1, (2,): 1})) == 1
        assert eq86_rhs(eps, (1, 1), NCSeries(2, 2, {(1, 1): 1})) == 0


class TestInterleavedMoments:
    """Test both NC(m) sums against moments computed in a free space."""

    @pytest.mark.parametrize("eps", ["1", "12", "11", "121", "112", "1212", "1122", "1221"])
    def test_both_sums_agree(self, free_pairs, eps):
        result = verify_eq72_73(E(eps), free_pairs)
        assert result.holds
        assert result.x_moment == result.x_sum
        assert result.y_moment == result.y_sum

    def test_sides_match_full_result(self, free_pairs):
        result = verify_eq72_73(E("121"), free_pairs)
        assert x_word_sides(E("121"), free_pairs) == (result.x_moment, result.x_sum)
        assert y_word_sides(E("121"), free_pairs) == (result.y_moment, result.y_sum)

    def test_mismatch_does_not_hold(self, free_pairs):
        result = verify_eq72_73(E("12"), free_pairs)
        assert not replace(result, x_sum=result.x_sum + 1).holds

    def test_needs_trace(self):
        space = FreeSpace(
            [["a1", "a2"], ["p1", "p2"]], [circular_pair_r(4), circular_pair_r(4)]
        )
        with pytest.raises(DomainError, match="tracial"):
            verify_eq72_73(E("12"), space)

    def test_families_must_differ(self):
        space = FreeSpace([["a1", "a2", "p1", "p2"]], [NCSeries(4, 4)], tracial=True)
        with pytest.raises(DomainError, match="different families"):
            verify_eq72_73(E("12"), space)

    def test_capacity(self, free_pairs):
        with pytest.raises(CapacityError, match="needs degree 11"):
            verify_eq72_73(E("12121"), free_pairs)

    def test_check_alone(self, free_pairs):
        with pytest.raises(CapacityError, match="needs degree 11"):
            check_interleaving_space(E("12121"), free_pairs)
        check_interleaving_space(E("1212"), free_pairs)

    def test_rhs_direct(self):
        r_a = circular_pair_r(2)
        m_p = NCSeries(2, 2, {(1,): 1, (2,): 1, (1, 2): 3, (2, 1): 3})
        assert eq72_rhs(E("12"), r_a, m_p) == 3
