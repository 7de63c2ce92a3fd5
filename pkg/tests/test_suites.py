"""
Tests for the verification suites

Every suite is run at a small degree; the registry, the parameter checks
and the report determinism are tested separately.
"""

import json
import random

import pytest

from ncfree.core.epscomp import EpsString
from ncfree.core.freespace import FreeSpace, random_tracial_series
from ncfree.core.ncseries import NCSeries
from ncfree.core.rdiagonal import circular_pair_r
from ncfree.errors import CapacityError, DomainError
from ncfree.verify.suites import (
    ALL,
    CIRCULAR_PRODUCT_DEGREE,
    SUITES,
    SuiteOptions,
    _conjugated_cases,
    circular_product_case,
    interleaved_report,
    run_suite,
    series_agreement,
    suite_names,
)

EXPECTED_SUITES = {
    "zetamoeb", "haar", "thm1.5", "cor1.8", "prop1.7", "prop5.3", "prop5.1", "app1.9",
    "prop6.1", "prop6.3", "app1.10", "thm1.13", "prop8.8", "cor8.9", "thm1.14",
    "prop2.4", "prop4.4", "cor4.5", "lemma4.7", "prop7.3", "cor7.4", "prop7.7",
    "cor7.8", "prop7.9", "prop8.11",
}


# ============================================================================
# Registry
# ============================================================================

class TestRegistry:
    """Test the suite table."""

    def test_names(self):
        assert set(SUITES) == EXPECTED_SUITES
        assert suite_names()[-1] == ALL

    @pytest.mark.parametrize("name", sorted(EXPECTED_SUITES))
    def test_default_degree_accepted(self, name):
        spec = SUITES[name]
        assert spec.degree in spec.degree_range()
        assert spec.instances >= 1
        assert spec.summary

    def test_ground_scale_follows_cap(self, monkeypatch):
        monkeypatch.setenv("NCFREE_MAX_N", "6")
        assert SUITES["prop4.4"].degree_range() == range(1, 4)
        assert SUITES["lemma4.7"].degree_range() == range(1, 7)
        with pytest.raises(CapacityError, match="accepts degree 1..6"):
            run_suite("lemma4.7", degree=7)


class TestParameters:
    """Test run_suite argument checks."""

    def test_unknown_suite(self):
        with pytest.raises(DomainError, match="Unknown suite 'thm9.9'"):
            run_suite("thm9.9")

    def test_degree_out_of_range(self):
        with pytest.raises(CapacityError, match="accepts degree 8..12"):
            run_suite("thm1.5", degree=6)

    def test_instances_positive(self):
        with pytest.raises(DomainError, match="instances"):
            run_suite("zetamoeb", degree=4, instances=0)

    def test_workers_positive(self):
        with pytest.raises(DomainError, match="workers"):
            run_suite("lemma4.7", workers=0)

    def test_all_takes_no_degree(self):
        with pytest.raises(DomainError, match="'all'"):
            run_suite(ALL, degree=4)


class TestSeriesAgreement:
    """Test the series comparison used by the suites."""

    def test_equal(self):
        f = NCSeries(1, 2, {(1,): 1})
        result = series_agreement(("k",), {}, f, f)
        assert result.passed
        assert result.left == "1 terms up to degree 2"

    def test_first_difference(self):
        f = NCSeries(2, 3, {(1,): 1, (2, 1): 2, (1, 1, 1): 5})
        g = NCSeries(2, 3, {(1,): 1, (2, 1): 3, (1, 2): 7})
        result = series_agreement(("k",), {}, f, g)
        assert not result.passed
        assert result.note == "first difference at word [1, 2]"
        assert (result.left, result.right) == ("0", "7")

    def test_shapes(self):
        result = series_agreement(("k",), {}, NCSeries(1, 2), NCSeries(1, 3))
        assert result.note == "series shapes differ"


# ============================================================================
# Suites at small degree
# ============================================================================

EXHAUSTIVE = [
    ("prop2.4", 4),
    ("prop4.4", 3),
    ("cor4.5", 3),
    ("lemma4.7", 6),
    ("prop7.7", 4),
    ("cor7.8", 4),
    ("prop8.11", 4),
]

SEEDED = [
    ("zetamoeb", 4),
    ("haar", 4),
    ("prop1.7", 4),
    ("prop5.3", 4),
    ("prop5.1", 4),
    ("app1.9", 4),
    ("prop6.1", 4),
    ("prop6.3", 3),
    ("app1.10", 4),
    ("prop7.3", 4),
    ("cor7.4", 4),
    ("prop7.9", 4),
    ("prop8.8", 4),
    ("cor8.9", 4),
]


class TestSuites:
    """Run each suite at a degree small enough for a unit test."""

    @pytest.mark.parametrize("name,degree", EXHAUSTIVE)
    def test_exhaustive(self, name, degree):
        report = run_suite(name, degree=degree)
        assert report.passed, report.to_text()
        assert report.cases_run > 0
        assert report.parameters["degree"] == degree

    @pytest.mark.parametrize("name,degree", SEEDED)
    def test_seeded(self, name, degree):
        report = run_suite(name, degree=degree, instances=2)
        assert report.passed, report.to_text()
        assert report.cases_run > 0

    def test_lemma_counts_cases(self):
        assert run_suite("lemma4.7", degree=6).cases_run == 6

    def test_kreweras_suite_counts_cases(self):
        # five properties per n plus the worked example
        assert run_suite("prop2.4", degree=4).cases_run == 21

    def test_prop73_small(self):
        # eps 1 and 12 fit degree 4, two sides each
        assert run_suite("prop7.3", degree=4, instances=1).cases_run == 4

    @pytest.mark.parametrize("name,degree", [
        ("thm1.5", 8), ("cor1.8", 8), ("thm1.13", 4), ("thm1.14", 4),
    ])
    def test_heavier(self, name, degree):
        assert run_suite(name, degree=degree, instances=1).passed


class TestDepth:
    """Default runs reach the orders the acceptance checks name."""

    def test_conjugation_default_degree(self):
        assert SUITES["thm1.14"].degree == 12

    def test_criterion_reaches_order_three(self):
        keys = [case.key for case in _conjugated_cases(SuiteOptions(12, 1, 0), 0)]
        assert keys == [("free", 0)] + [("criterion", 0, m) for m in (1, 2, 3)]

    def test_criterion_orders_follow_degree(self):
        keys = [case.key for case in _conjugated_cases(SuiteOptions(9, 1, 0), 0)]
        assert ("criterion", 0, 3) not in keys

    def test_conjugation_default_run(self):
        report = run_suite("thm1.14", instances=1)
        assert report.passed, report.to_text()
        assert report.cases_run == 4

    def test_circular_product_degree(self):
        result = circular_product_case()
        assert CIRCULAR_PRODUCT_DEGREE == 8
        assert result.passed, result.note
        assert result.inputs == {"degree": "8"}
        assert result.left.endswith("up to degree 8")

    def test_circular_product_independent_of_suite_degree(self):
        report = run_suite("prop1.7", degree=4, instances=1)
        assert report.passed, report.to_text()
        assert report.cases_run == 3
        assert circular_product_case(3).passed


class TestInterleavedReport:
    """The two interleaved-word identities as a report."""

    @pytest.fixture
    def space(self):
        p_series = random_tracial_series(2, 8, random.Random(11))
        return FreeSpace(
            [["a1", "a2"], ["p1", "p2"]], [circular_pair_r(8), p_series], tracial=True
        )

    def test_two_cases(self, space):
        report = interleaved_report(EpsString((1, 2, 1)), space)
        assert report.passed, report.to_text()
        assert report.cases_run == 2

    def test_key_prefix_and_stage(self, space):
        report = interleaved_report(EpsString((1, 2)), space, key=(7,))
        assert report.stages[0].stage == "prop7.3:12"

    def test_capacity(self, space):
        with pytest.raises(CapacityError, match="needs degree 11"):
            interleaved_report(EpsString((1, 2, 1, 2, 1)), space)


class TestDeterminism:
    """Identical parameters give byte-identical JSON."""

    def test_repeatable(self):
        first = run_suite("zetamoeb", degree=4, instances=2, seed=5).to_json()
        second = run_suite("zetamoeb", degree=4, instances=2, seed=5).to_json()
        assert first == second

    def test_workers_do_not_change_report(self):
        inline = run_suite("prop2.4", degree=4).to_json()
        threaded = run_suite("prop2.4", degree=4, workers=3).to_json()
        assert inline == threaded

    def test_seed_recorded(self):
        data = json.loads(run_suite("zetamoeb", degree=4, instances=1, seed=9).to_json())
        assert data["parameters"] == {"degree": 4, "instances": 1, "seed": 9}
        assert all(stage["seed"] == 9 for stage in data["stages"])
