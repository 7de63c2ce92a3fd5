"""
Tests for the ncfree command line
"""

import json
import logging
from fractions import Fraction

import pytest

from ncfree.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from ncfree.core.ncseries import NCSeries, sum_series, zeta_series
from ncfree.utils.series_io import load_series, save_series, series_to_json


@pytest.fixture(autouse=True)
def restore_logging():
    """main() replaces the root handlers; put them back afterwards."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ============================================================================
# Partitions
# ============================================================================

class TestEnumerate:
    """Test the enumerate subcommand."""

    def test_listing(self, capsys):
        code, out, _ = run(capsys, "enumerate", "3")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[-1] == "count: 5"
        assert "{1,2,3}" in lines

    def test_catalan_count(self, capsys):
        _, out, _ = run(capsys, "enumerate", "4")
        assert out.splitlines()[-1] == "count: 14"

    def test_parity_class(self, capsys):
        _, out, _ = run(capsys, "enumerate", "4", "--class", "p-alt")
        assert out.splitlines()[-1] == "count: 3"

    def test_eps_alternating(self, capsys):
        code, out, _ = run(capsys, "enumerate", "2", "--class", "eps-alt", "--eps", "12")
        assert code == EXIT_OK
        assert out.splitlines() == ["{1,2}", "count: 1"]

    def test_json(self, capsys):
        _, out, _ = run(capsys, "enumerate", "4", "--class", "eps-alt", "--eps", "1212", "--json")
        data = json.loads(out)
        assert data["count"] == 3
        assert data["eps"] == "1212"
        assert data["class"] == "eps-alt"

    def test_eps_required(self, capsys):
        code, _, err = run(capsys, "enumerate", "2", "--class", "eps-alt")
        assert code == EXIT_USAGE
        assert "--eps" in err

    def test_eps_length(self, capsys):
        code, _, err = run(capsys, "enumerate", "4", "--class", "eps-alt", "--eps", "12")
        assert code == EXIT_USAGE
        assert "expected 4" in err

    def test_odd_parity_size(self, capsys):
        code, _, _ = run(capsys, "enumerate", "3", "--class", "p-prsv")
        assert code == EXIT_USAGE


class TestKreweras:
    """Test the kreweras subcommand."""

    def test_worked_example(self, capsys):
        code, out, _ = run(capsys, "kreweras", "{1,4,5}{2,3}{6,8}{7}")
        assert code == EXIT_OK
        assert out.strip() == "{1,3}{2}{4}{5,8}{6,7}"

    def test_singletons(self, capsys):
        _, out, _ = run(capsys, "kreweras", "{1}{2}{3}")
        assert out.strip() == "{1,2,3}"

    def test_inverse(self, capsys):
        _, out, _ = run(capsys, "kreweras", "{1,2}{3,4}", "--inverse")
        assert out.strip() == "{1,3}{2}{4}"

    def test_relative(self, capsys):
        _, out, _ = run(capsys, "kreweras", "{1,2}", "--relative", "{1,2}")
        assert out.strip() == "{1}{2}"

    def test_relative_needs_finer(self, capsys):
        code, _, err = run(capsys, "kreweras", "{1,2}", "--relative", "{1}{2}")
        assert code == EXIT_USAGE
        assert "not finer" in err

    def test_crossing_literal(self, capsys):
        code, _, err = run(capsys, "kreweras", "{1,3}{2,4}")
        assert code == EXIT_USAGE
        assert "crossing" in err

    def test_malformed_literal(self, capsys):
        code, _, err = run(capsys, "kreweras", "{1,2")
        assert code == EXIT_USAGE
        assert err.startswith("error:")


# ============================================================================
# Series files
# ============================================================================

class TestSeriesCommands:
    """Test series, boxstar and transform."""

    def test_series_to_stdout(self, capsys):
        code, out, _ = run(capsys, "series", "zeta", "--nvars", "1", "--degree", "2")
        assert code == EXIT_OK
        assert '[[1, 1], "1/1", "0/1"]' in out

    def test_series_to_file(self, capsys, tmp_path):
        path = tmp_path / "moeb.json"
        code, out, _ = run(capsys, "series", "moeb", "--nvars", "2", "--degree", "3",
                           "-o", str(path))
        assert code == EXIT_OK
        assert out == ""
        assert load_series(path).coef((1, 2)) == -1

    def test_boxstar(self, capsys, tmp_path):
        zeta, moeb, out_path = tmp_path / "z.json", tmp_path / "m.json", tmp_path / "s.json"
        run(capsys, "series", "zeta", "--nvars", "2", "--degree", "4", "-o", str(zeta))
        run(capsys, "series", "moeb", "--nvars", "2", "--degree", "4", "-o", str(moeb))
        code, _, _ = run(capsys, "boxstar", str(zeta), str(moeb), "-o", str(out_path))
        assert code == EXIT_OK
        assert load_series(out_path) == sum_series(2, 4)

    @pytest.mark.parametrize("extra", [[], ["--cross-check"]])
    def test_semicircle_moments(self, capsys, tmp_path, extra):
        path = tmp_path / "r.json"
        save_series(NCSeries(1, 4, {(1, 1): 1}), path)
        code, _, _ = run(capsys, "transform", "m-from-r", str(path),
                         "-o", str(tmp_path / "m.json"), *extra)
        assert code == EXIT_OK
        moments = load_series(tmp_path / "m.json")
        assert [moments.coef((1,) * k) for k in range(1, 5)] == [0, 1, 0, 2]

    @pytest.mark.parametrize("extra", [[], ["--recursive"]])
    def test_back_to_cumulants(self, capsys, tmp_path, extra):
        source, moments = tmp_path / "r.json", tmp_path / "m.json"
        save_series(zeta_series(1, 5), source)
        run(capsys, "transform", "m-from-r", str(source), "-o", str(moments))
        code, out, _ = run(capsys, "transform", "r-from-m", str(moments), *extra)
        assert code == EXIT_OK
        back = tmp_path / "back.json"
        back.write_text(out, encoding="utf-8")
        assert load_series(back) == zeta_series(1, 5)

    def test_sum_is_a_unit(self, capsys, tmp_path):
        f = NCSeries(2, 3, {(1,): 2, (2, 1): Fraction(1, 3), (1, 2, 2): -1})
        f_path, unit = tmp_path / "f.json", tmp_path / "sum.json"
        save_series(f, f_path)
        save_series(sum_series(2, 3), unit)
        code, out, _ = run(capsys, "boxstar", str(f_path), str(unit))
        assert code == EXIT_OK
        assert out == f_path.read_text(encoding="utf-8")

    def test_zero_moments(self, capsys, tmp_path):
        path = tmp_path / "zero.json"
        save_series(NCSeries(2, 3), path)
        _, out, _ = run(capsys, "transform", "r-from-m", str(path))
        assert out == series_to_json(NCSeries(2, 3))

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "boxstar", str(tmp_path / "a"), str(tmp_path / "b"))
        assert code == EXIT_USAGE
        assert "not found" in err

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        code, _, err = run(capsys, "transform", "m-from-r", str(path))
        assert code == EXIT_USAGE
        assert "invalid JSON" in err

    def test_file_not_utf8(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_bytes(b"\xff\xfe")
        code, _, err = run(capsys, "boxstar", str(path), str(path))
        assert code == EXIT_USAGE
        assert "not valid UTF-8" in err

    def test_directory_operand(self, capsys, tmp_path):
        code, _, err = run(capsys, "boxstar", str(tmp_path), str(tmp_path))
        assert code == EXIT_USAGE
        assert err.startswith("error: Cannot read series file")


# ============================================================================
# Suites
# ============================================================================

class TestVerify:
    """Test suites and verify."""

    def test_listing(self, capsys):
        code, out, _ = run(capsys, "suites")
        assert code == EXIT_OK
        names = [line.split()[0] for line in out.splitlines()]
        assert "thm1.5" in names
        assert names[-1] == "all"

    def test_passing_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "lemma4.7", "--degree", "4")
        assert code == EXIT_OK
        assert "Suite lemma4.7: PASS" in out

    def test_json_report(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, _, _ = run(capsys, "verify", "prop2.4", "--degree", "3", "--json", str(path))
        assert code == EXIT_OK
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["suite"] == "prop2.4"
        assert data["passed"] is True
        assert "wall_time" not in data

    def test_json_to_stdout(self, capsys):
        code, out, err = run(capsys, "verify", "zetamoeb", "--degree", "4", "--json", "-")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["suite"] == "zetamoeb"
        assert data["passed"] is True
        assert "Suite zetamoeb: PASS" in err

    def test_text_stays_on_stdout_for_a_file(self, capsys, tmp_path):
        _, out, _ = run(capsys, "verify", "lemma4.7", "--degree", "3",
                        "--json", str(tmp_path / "r.json"))
        assert "Suite lemma4.7: PASS" in out

    def test_stages(self, capsys):
        _, out, _ = run(capsys, "verify", "lemma4.7", "--degree", "3", "--stages")
        assert "begin lemma4.7" in out

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "nosuch")
        assert code == EXIT_USAGE
        assert "Unknown suite" in err

    def test_degree_out_of_range(self, capsys):
        code, _, err = run(capsys, "verify", "prop4.4", "--degree", "9")
        assert code == EXIT_USAGE
        assert "accepts degree" in err

    def test_exit_codes_distinct(self):
        assert len({EXIT_OK, EXIT_FAILED, EXIT_USAGE}) == 3


class TestParser:
    """Test argparse handling."""

    def test_help(self, capsys):
        assert main(["--help"]) == EXIT_OK
        assert "ncfree" in capsys.readouterr().out

    def test_missing_command(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_bad_choice(self, capsys):
        assert main(["enumerate", "3", "--class", "odd"]) == EXIT_USAGE

    def test_log_level_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("NCFREE_LOG_LEVEL", "nonsense")
        code, _, err = run(capsys, "enumerate", "1")
        assert code == EXIT_USAGE
        assert "log level" in err
