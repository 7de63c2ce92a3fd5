"""
Unit tests for series and space files

Tests the canonical JSON text, loading and the error messages for
malformed files.
"""

import json
from fractions import Fraction

import pytest

from ncfree.core.freespace import FreeSpace
from ncfree.core.ncseries import NCSeries, moeb_series
from ncfree.core.rdiagonal import circular_pair_r, haar_pair_r
from ncfree.errors import DomainError, SeriesFormatError
from ncfree.utils.gaussian import GaussianRational
from ncfree.utils.series_io import (
    load_series,
    load_space,
    save_series,
    save_space,
    series_from_json,
    series_from_payload,
    series_to_json,
    space_from_payload,
    space_to_json,
    space_to_payload,
)


def payload(**overrides):
    data = {"nvars": 1, "degree_cap": 2, "terms": [[[1], "1/1", "0/1"]]}
    data.update(overrides)
    return data


# ============================================================================
# Series text
# ============================================================================

class TestSeriesText:
    """Test the canonical series text."""

    def test_canonical_text(self):
        text = series_to_json(circular_pair_r(4))
        assert text == (
            "{\n"
            '  "degree_cap": 4,\n'
            '  "nvars": 2,\n'
            '  "terms": [\n'
            '    [[1, 2], "1/1", "0/1"],\n'
            '    [[2, 1], "1/1", "0/1"]\n'
            "  ]\n"
            "}\n"
        )

    def test_empty_series(self):
        text = series_to_json(NCSeries(1, 2))
        assert json.loads(text) == {"degree_cap": 2, "nvars": 1, "terms": []}
        assert series_from_json(text) == NCSeries(1, 2)

    def test_gaussian_terms(self):
        f = NCSeries(2, 2, {(2, 1): GaussianRational(Fraction(1, 2), -3)})
        assert '[[2, 1], "1/2", "-3/1"]' in series_to_json(f)
        assert series_from_json(series_to_json(f)) == f

    def test_single_value_form(self):
        f = series_from_payload(payload(terms=[[[1, 1], "1/2+1/3i"]]))
        assert f.coef((1, 1)) == GaussianRational(Fraction(1, 2), Fraction(1, 3))

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "moeb.json"
        save_series(moeb_series(2, 4), path)
        assert load_series(path) == moeb_series(2, 4)
        assert load_series(str(path)) == moeb_series(2, 4)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="not found"):
            load_series(tmp_path / "absent.json")


class TestSeriesErrors:
    """Test malformed series payloads."""

    def test_invalid_json(self):
        with pytest.raises(SeriesFormatError, match="Line 1: invalid JSON"):
            series_from_json("{nvars: 1")

    def test_not_an_object(self):
        with pytest.raises(SeriesFormatError, match="expected a JSON object"):
            series_from_payload([1, 2])

    def test_missing_nvars(self):
        data = payload()
        del data["nvars"]
        with pytest.raises(SeriesFormatError, match="'nvars' must be an integer"):
            series_from_payload(data)

    def test_bool_is_not_an_integer(self):
        with pytest.raises(SeriesFormatError, match="'degree_cap'"):
            series_from_payload(payload(degree_cap=True))

    def test_terms_not_a_list(self):
        with pytest.raises(SeriesFormatError, match="'terms' must be a list"):
            series_from_payload(payload(terms="none"))

    def test_term_shape(self):
        with pytest.raises(SeriesFormatError, match="term 0: expected"):
            series_from_payload(payload(terms=[[[1]]]))

    def test_word_not_integers(self):
        with pytest.raises(SeriesFormatError, match="term 0: word must be"):
            series_from_payload(payload(terms=[[["1"], "1/1", "0/1"]]))

    def test_bad_rational(self):
        with pytest.raises(SeriesFormatError, match="term 1"):
            series_from_payload(payload(terms=[[[1], "1/1", "0/1"], [[1, 1], "0.5", "0/1"]]))

    def test_duplicate_word(self):
        with pytest.raises(SeriesFormatError, match="appears twice"):
            series_from_payload(payload(terms=[[[1], "1/1", "0/1"], [[1], "2/1", "0/1"]]))

    def test_word_beyond_cap(self):
        with pytest.raises(SeriesFormatError, match="beyond degree cap"):
            series_from_payload(payload(terms=[[[1, 1, 1], "1/1", "0/1"]]))

    def test_is_a_domain_error(self):
        with pytest.raises(DomainError):
            series_from_payload(payload(nvars=0))

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_bytes(b"\xff\xfe")
        with pytest.raises(SeriesFormatError, match="not valid UTF-8"):
            load_series(path)

    def test_directory(self, tmp_path):
        with pytest.raises(SeriesFormatError, match="Cannot read series file"):
            load_series(tmp_path)

    def test_unreadable_is_a_domain_error(self, tmp_path):
        with pytest.raises(DomainError):
            load_series(tmp_path)


# ============================================================================
# Space files
# ============================================================================

class TestSpaceFiles:
    """Test space payloads."""

    @pytest.fixture
    def space(self):
        return FreeSpace(
            [["u", "ui"], ["c", "cs"]], [haar_pair_r(4), circular_pair_r(4)], tracial=True
        )

    def test_round_trip(self, space, tmp_path):
        path = tmp_path / "space.json"
        save_space(space, path)
        loaded = load_space(path)
        assert loaded.families == space.families
        assert loaded.family_r == space.family_r
        assert loaded.tracial
        assert space_to_json(loaded) == space_to_json(space)

    def test_payload_fields(self, space):
        data = space_to_payload(space)
        assert data["variables"] == ["u", "ui", "c", "cs"]
        assert data["degree_cap"] == 4

    def test_declared_cap_checked(self, space):
        data = space_to_payload(space)
        data["degree_cap"] = 6
        with pytest.raises(SeriesFormatError, match="degree_cap 6 disagrees"):
            space_from_payload(data)

    def test_declared_variables_checked(self, space):
        data = space_to_payload(space)
        data["variables"] = ["u"]
        with pytest.raises(SeriesFormatError, match="variables"):
            space_from_payload(data)

    def test_tracial_must_be_bool(self, space):
        data = space_to_payload(space)
        data["tracial"] = "yes"
        with pytest.raises(SeriesFormatError, match="'tracial'"):
            space_from_payload(data)

    def test_inconsistent_space(self, space):
        data = space_to_payload(space)
        data["families"] = [["u", "ui"], ["u", "cs"]]
        data.pop("variables")
        with pytest.raises(SeriesFormatError, match="more than one family"):
            space_from_payload(data)

    def test_bad_family_series_named(self, space):
        data = space_to_payload(space)
        data["family_r"][1]["terms"] = "x"
        with pytest.raises(SeriesFormatError, match="family_r 1"):
            space_from_payload(data)

    def test_missing_space_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_space(tmp_path / "none.json")

    def test_space_file_not_utf8(self, tmp_path):
        path = tmp_path / "space.json"
        path.write_bytes(b"\x80")
        with pytest.raises(SeriesFormatError, match="Space file .* not valid UTF-8"):
            load_space(path)

    def test_space_directory(self, tmp_path):
        with pytest.raises(SeriesFormatError, match="Cannot read space file"):
            load_space(tmp_path)
