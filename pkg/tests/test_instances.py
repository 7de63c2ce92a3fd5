"""
Unit tests for the seeded instance builders
"""

from ncfree.core.freespace import check_freeness, is_cyclically_invariant, joint_r_of
from ncfree.core.ncseries import NCSeries
from ncfree.core.rdiagonal import is_diagonally_balanced_cumulants, is_r_diagonal
from ncfree.verify.instances import (
    HAAR,
    a_elements,
    balanced_space,
    control_space,
    free_copy_space,
    haar_pairs_space,
    instance_rng,
    lift,
    pair_determining_series,
    r_diagonal_space,
    random_series,
    statement_elements,
    tracial_p_family,
)


class TestSeeding:
    """Test that instances are fixed by (seed, index)."""

    def test_same_seed_same_instance(self):
        first = random_series(2, 4, instance_rng(3, 1))
        second = random_series(2, 4, instance_rng(3, 1))
        assert first == second

    def test_index_changes_instance(self):
        draws = {instance_rng(0, i).random() for i in range(5)}
        assert len(draws) == 5

    def test_lift_keeps_coefficients(self):
        f = NCSeries(1, 2, {(1, 1): 3})
        lifted = lift(f, 5)
        assert lifted.degree_cap == 5
        assert lifted.coef((1, 1)) == 3

    def test_p_family_support(self):
        family = tracial_p_family(8, instance_rng(0, 0), support=3)
        assert family.degree_cap == 8
        assert all(len(w) <= 3 for w in family.support())
        assert is_cyclically_invariant(family)


class TestSpaces:
    """Test the spaces handed to the suites."""

    def test_r_diagonal_space(self):
        space, f = r_diagonal_space(6, instance_rng(0, 0))
        assert space.tracial
        assert space.families == (("a1", "a2"), ("p1", "p2"))
        assert is_r_diagonal(space.family_r[0])
        assert f.degree_cap == 3

    def test_balanced_space(self):
        space = balanced_space(6, instance_rng(1, 0))
        assert is_diagonally_balanced_cumulants(space.family_r[0])
        assert check_freeness(space, [["a1", "a2"], ["p1", "p2"]], degree=4)

    def test_control_pair_is_not_r_diagonal(self):
        space = control_space(8)
        assert not is_r_diagonal(joint_r_of(space, ["a1*p1", "a2*p2"]))

    def test_haar_pairs_names(self):
        space = haar_pairs_space(4, instance_rng(0, 0), k=2)
        assert space.families[0] == HAAR
        assert space.variables == ("u", "ui", "p11", "p12", "p21", "p22")
        assert a_elements(1) == [("p11*ui", "u*p12")]
        assert statement_elements(2)[1] == ("u*p21", "p22*ui")

    def test_free_copies(self):
        space = haar_pairs_space(4, instance_rng(2, 0), k=2)
        fs = pair_determining_series(space, 2)
        copies = free_copy_space(fs, 4)
        assert copies.variables == ("b11", "b12", "b21", "b22")
        assert all(is_r_diagonal(r) for r in copies.family_r)
