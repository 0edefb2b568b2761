"""End-to-end tests for the command-line interface.

Each test drives ``coarseentropy.cli.main`` with an argv list and inspects
the rendered report (parsed back with the stdlib json/csv modules) plus the
exit status.  Numeric expectations are cross-checked against the library
calls the commands wrap; the library itself is oracle-tested elsewhere.
"""

import csv
import io
import json
import math

import pytest

from coarseentropy import cli
from coarseentropy.entropy.counts import rate_series
from coarseentropy.entropy.witness import catalog_pingpong
from coarseentropy.paths import enumerate_orbits
from coarseentropy.serialize import orbits_from_json_lines
from coarseentropy.spaces import make_example

SMALL_TREE_LINE = '{"max_tree": 4, "schedule": "2^n"}'


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(argv, capsys):
    code, out, err = run(argv, capsys)
    assert err == ""
    return code, json.loads(out)


class TestGrowthCommand:
    def test_int_line_series(self, capsys):
        code, doc = run_json(
            ["growth", "--space", "int_line", "--window", "4"], capsys)
        assert code == 0
        assert doc["schema"] == "v1"
        assert doc["kind"] == "growth-series"
        series = doc["report"]["series"]
        assert series["levels"] == [0, 1, 2, 3, 4]
        assert series["values"] == [1, 3, 5, 7, 9]
        assert series["measure"] == "counting"
        assert doc["report"]["config"]["space"] == "int_line"
        assert doc["report"]["config"]["log_base"] == "e"

    def test_measured_values_are_exact_rationals(self, capsys):
        code, doc = run_json(
            ["growth", "--space", "branch_tree",
             "--params", '{"max_depth": 6, "measured": true}',
             "--window", "3"], capsys)
        assert code == 0
        series = doc["report"]["series"]
        assert series["measure"] == "measured"
        # root-ball masses 2^(l+1) - 1 land as exact integers here
        assert series["values"] == [1, 3, 7, 15]

    def test_log_base_rescales_slope(self, capsys):
        argv = ["growth", "--space", "int_line", "--window", "6"]
        _, doc_e = run_json(argv, capsys)
        _, doc_2 = run_json(argv + ["--log-base", "2"], capsys)
        slope_e = doc_e["report"]["fitted_slope"]
        slope_2 = doc_2["report"]["fitted_slope"]
        assert slope_2 == pytest.approx(slope_e / math.log(2))
        assert doc_2["report"]["config"]["log_base"] == 2.0

    def test_log_base_one_rejected(self, capsys):
        code, out, err = run(
            ["growth", "--space", "int_line", "--log-base", "1"], capsys)
        assert code == 1 and out == ""
        assert err.startswith("config error:")

    def test_negative_log_base_rejected(self, capsys):
        code, _, err = run(
            ["growth", "--space", "int_line", "--log-base", "-2"], capsys)
        assert code == 1
        assert err.startswith("config error:")


class TestOrbitsCommand:
    def test_int_line_counts(self, capsys):
        code, doc = run_json(
            ["orbits", "--space", "int_line", "--n", "2", "--delta", "1"], capsys)
        assert code == 0
        assert doc["kind"] == "orbit-set-summary"
        report = doc["report"]
        assert report["count"] == 9  # (2*1+1)^2 paths
        assert report["distinct_endpoints"] == 5  # endpoints -2..2
        assert report["exhaustive"] is True
        assert report["x0"] == "0"

    def test_paths_out_round_trips(self, tmp_path, capsys):
        dump = tmp_path / "orbits.jsonl"
        code, doc = run_json(
            ["orbits", "--space", "int_line", "--n", "2",
             "--paths-out", str(dump)], capsys)
        assert code == 0
        assert doc["report"]["paths_out"] == "orbits.jsonl"
        loaded = orbits_from_json_lines(dump.read_text(encoding="utf-8"))
        direct = enumerate_orbits(make_example("int_line"), 0, 2, 1)
        assert loaded.point_rows() == direct.point_rows()
        assert loaded.exhaustive is True

    def test_cap_exceeded_exits_one(self, capsys):
        code, out, err = run(
            ["orbits", "--space", "int_line", "--n", "4", "--cap", "5"], capsys)
        assert code == 1 and out == ""
        assert err.startswith("budget exceeded:")

    def test_negative_n_rejected(self, capsys):
        code, _, err = run(
            ["orbits", "--space", "int_line", "--n", "-1"], capsys)
        assert code == 1
        assert err.startswith("config error:")


class TestRatesCommand:
    def test_length_zero_single_row(self, capsys):
        code, doc = run_json(
            ["rates", "--space", "int_line", "--n", "0", "--radius", "2"], capsys)
        assert code == 0
        assert doc["kind"] == "rate-series"
        rows = doc["report"]["rows"]
        assert len(rows) == 1
        assert rows[0]["n"] == 0
        assert rows[0]["count"] == 1
        assert rows[0]["rate"] == 0
        assert doc["report"]["mode"] == "separated"

    def test_rows_match_library(self, capsys):
        code, doc = run_json(
            ["rates", "--space", "int_line", "--n", "1,2",
             "--radius", "2", "--delta", "1"], capsys)
        assert code == 0
        space = make_example("int_line")
        table = rate_series(space, 0, 1, 2, [1, 2], mode="separated")
        expect = [pt.to_jsonable() for pt in table["points"]]
        got = doc["report"]["rows"]
        assert [r["count"] for r in got] == [r["count"] for r in expect]
        assert [r["certificate"] for r in got] == [r["certificate"] for r in expect]
        assert got[1]["rate"] == pytest.approx(math.log(got[1]["count"]) / 2)

    def test_dense_mode_reports_covering_bound(self, capsys):
        code, doc = run_json(
            ["rates", "--space", "int_line", "--n", "3,6",
             "--radius", "4", "--mode", "dense"], capsys)
        assert code == 0
        report = doc["report"]
        assert report["mode"] == "dense"
        assert report["covering_bound"]["k"] == 3
        assert report["covering_bound"]["ball_size"] == 7
        assert report["bound_satisfied"] == {"3": True, "6": True}

    def test_bad_length_list_rejected(self, capsys):
        code, _, err = run(
            ["rates", "--space", "int_line", "--n", "1,two", "--radius", "2"], capsys)
        assert code == 1
        assert err.startswith("config error:")

    def test_missing_radius_rejected(self, capsys):
        code, _, err = run(
            ["rates", "--space", "int_line", "--n", "1"], capsys)
        assert code == 1
        assert err.startswith("config error:")


class TestWitnessCommand:
    def test_small_tree_line_family(self, capsys):
        code, doc = run_json(
            ["witness", "--space", "tree_line", "--params", SMALL_TREE_LINE,
             "--delta", "1", "--radius", "2", "--p", "1"], capsys)
        assert code == 0
        assert doc["kind"] == "witness-family"
        report = doc["report"]
        family = catalog_pingpong(
            make_example("tree_line", json.loads(SMALL_TREE_LINE)), 1, 2, 1)
        assert report["family"]["size"] == family.size == 4
        assert report["family"]["n"] == family.n == 24
        assert report["rate_bound"] == pytest.approx(math.log(4) / 24)
        assert report["verification"] == "pairwise-exhaustive"
        assert report["materializable_within_cap"] is True

    def test_log_base_rescales_rate_bound(self, capsys):
        argv = ["witness", "--space", "tree_line", "--params", SMALL_TREE_LINE,
                "--delta", "1", "--radius", "2", "--p", "1"]
        _, doc_e = run_json(argv, capsys)
        _, doc_4 = run_json(argv + ["--log-base", "4"], capsys)
        assert doc_4["report"]["rate_bound"] == pytest.approx(
            doc_e["report"]["rate_bound"] / math.log(4))

    def test_p_zero_rejected(self, capsys):
        code, _, err = run(
            ["witness", "--space", "tree_line", "--params", SMALL_TREE_LINE,
             "--delta", "1", "--radius", "2", "--p", "0"], capsys)
        assert code == 1
        assert err.startswith("config error:")

    def test_space_without_arm_construction_errors(self, capsys):
        code, _, err = run(
            ["witness", "--space", "int_line", "--delta", "1", "--radius", "2"], capsys)
        assert code == 1
        assert err.startswith("error:")


class TestClassifyCommand:
    def test_ultrametric_product_zero(self, capsys):
        code, doc = run_json(
            ["classify", "--space", "ultrametric_product",
             "--params", '{"max_index": 6}'], capsys)
        assert code == 0
        assert doc["kind"] == "classification"
        report = doc["report"]
        assert report["verdict"] == "zero"
        assert report["rule"] == "ultrametric"
        assert report["certified"] is True

    def test_branch_tree_infinite(self, capsys):
        code, doc = run_json(
            ["classify", "--space", "branch_tree", "--params", '{"max_depth": 8}'],
            capsys)
        assert code == 0
        report = doc["report"]
        assert report["verdict"] == "infinite"
        assert report["rule"] == "not-coarsely-bounded-geometry"

    def test_strict_inconclusive_exits_two_with_report(self, capsys):
        code, out, err = run(
            ["classify", "--space", "log_line", "--strict"], capsys)
        assert code == 2 and err == ""
        doc = json.loads(out)
        assert doc["report"]["verdict"] == "inconclusive"

    def test_inconclusive_without_strict_exits_zero(self, capsys):
        code, doc = run_json(["classify", "--space", "log_line"], capsys)
        assert code == 0
        assert doc["report"]["verdict"] == "inconclusive"

    def test_log_base_rescales_slope(self, capsys):
        argv = ["classify", "--space", "int_line"]
        _, doc_e = run_json(argv, capsys)
        _, doc_2 = run_json(argv + ["--log-base", "2"], capsys)
        ev_e, ev_2 = doc_e["report"]["evidence"], doc_2["report"]["evidence"]
        assert ev_2["fitted_slope"] == pytest.approx(
            ev_e["fitted_slope"] / math.log(2), abs=1e-12)

    def test_unknown_tag_errors(self, capsys):
        code, out, err = run(["classify", "--space", "klein_bottle"], capsys)
        assert code == 1 and out == ""
        assert err.startswith("error:")

    def test_bad_params_json_rejected(self, capsys):
        code, _, err = run(
            ["classify", "--space", "int_line", "--params", "{not json"], capsys)
        assert code == 1
        assert err.startswith("config error:")

    def test_params_must_be_object(self, capsys):
        code, _, err = run(
            ["classify", "--space", "int_line", "--params", "[1,2]"], capsys)
        assert code == 1
        assert err.startswith("config error:")


class TestQgcheckCommand:
    def test_int_line_consistent(self, capsys):
        code, doc = run_json(["qgcheck", "--space", "int_line"], capsys)
        assert code == 0
        assert doc["kind"] == "quasi-geodesic-check"
        assert doc["report"]["verdict"] == "consistent"

    def test_log_line_fails_but_exit_zero(self, capsys):
        # a definite failure is a conclusive answer, not an inconclusive one
        code, doc = run_json(["qgcheck", "--space", "log_line", "--strict"], capsys)
        assert code == 0
        assert doc["report"]["verdict"] == "fails"

    def test_zero_delta_rejected(self, capsys):
        code, _, err = run(
            ["qgcheck", "--space", "int_line", "--delta", "0"], capsys)
        assert code == 1
        assert err.startswith("config error:")


class TestBgcheckCommand:
    def test_branch_tree_unbounded(self, capsys):
        code, doc = run_json(
            ["bgcheck", "--space", "branch_tree", "--params", '{"max_depth": 8}'],
            capsys)
        assert code == 0
        assert doc["kind"] == "bounded-geometry-evidence"
        assert doc["report"]["verdict"] == "unbounded-evidence"

    def test_int_line_bounded_with_explicit_band(self, capsys):
        code, doc = run_json(
            ["bgcheck", "--space", "int_line", "--delta", "1", "--radius", "8",
             "--window", "6"], capsys)
        assert code == 0
        report = doc["report"]
        assert report["verdict"] == "bounded-evidence"
        assert report["config"]["window"] == 6

    def test_single_depth_strict_exits_two(self, capsys):
        code, out, err = run(
            ["bgcheck", "--space", "int_line", "--delta", "1", "--radius", "8",
             "--window", "2", "--strict"], capsys)
        assert code == 2 and err == ""
        assert json.loads(out)["report"]["verdict"] == "inconclusive"

    def test_window_below_two_rejected(self, capsys):
        code, _, err = run(
            ["bgcheck", "--space", "int_line", "--delta", "1", "--radius", "8",
             "--window", "1"], capsys)
        assert code == 1
        assert err.startswith("config error:")


class TestObstructCommand:
    def test_tree_line_into_prime_cycle(self, capsys):
        code, doc = run_json(
            ["obstruct", "--space", "tree_line", "--params", SMALL_TREE_LINE,
             "--target-space", "prime_cycle", "--target-params", '{"max_line": 64}'],
            capsys)
        assert code == 0
        assert doc["kind"] == "embedding-obstruction"
        report = doc["report"]
        assert report["obstruction"] is True
        assert report["source"]["verdict"] == "infinite"
        assert report["target"]["verdict"] == "zero"
        assert report["config"]["source"]["space"] == "tree_line"
        assert report["config"]["target"]["space"] == "prime_cycle"

    def test_strict_inconclusive_source_exits_two(self, capsys):
        code, out, err = run(
            ["obstruct", "--space", "log_line",
             "--target-space", "int_line", "--strict"], capsys)
        assert code == 2 and err == ""
        assert json.loads(out)["report"]["obstruction"] is False

    def test_missing_target_rejected(self, capsys):
        code, _, err = run(
            ["obstruct", "--space", "int_line"], capsys)
        assert code == 1
        assert err.startswith("config error:")


class TestSpaceResolution:
    def test_space_and_edges_conflict(self, capsys):
        code, _, err = run(
            ["growth", "--space", "int_line", "--edges", "x.csv"], capsys)
        assert code == 1
        assert err.startswith("config error:")

    def test_neither_space_nor_edges(self, capsys):
        code, _, err = run(["growth"], capsys)
        assert code == 1
        assert err.startswith("config error:")

    def test_params_with_edges_rejected(self, tmp_path, capsys):
        path = tmp_path / "edges.csv"
        path.write_text("src,dst\n0,1\n", encoding="utf-8")
        code, _, err = run(
            ["growth", "--edges", str(path), "--params", "{}"], capsys)
        assert code == 1
        assert err.startswith("config error:")

    def test_edges_file_classifies_as_finite(self, tmp_path, capsys):
        path = tmp_path / "path4.csv"
        path.write_text("src,dst\n0,1\n1,2\n2,3\n", encoding="utf-8")
        code, doc = run_json(["classify", "--edges", str(path)], capsys)
        assert code == 0
        report = doc["report"]
        assert report["verdict"] == "zero"
        assert report["rule"] == "bounded-components"
        assert report["evidence"]["points"] == 4
        assert report["config"]["edges"] == "path4.csv"
        assert report["config"]["weighted"] is False

    def test_weighted_edges_file(self, tmp_path, capsys):
        path = tmp_path / "wedge.csv"
        path.write_text("src,dst,weight\n0,1,1/2\n1,2,1/2\n", encoding="utf-8")
        code, doc = run_json(["growth", "--edges", str(path), "--window", "4"], capsys)
        assert code == 0
        assert doc["report"]["config"]["weighted"] is True
        # both half-weight edges fit inside one delta=1 step ball
        assert doc["report"]["series"]["values"] == [1, 3, 3, 3, 3]

    def test_missing_edges_file_is_io_error(self, capsys):
        code, _, err = run(
            ["growth", "--edges", "/nonexistent/edges.csv"], capsys)
        assert code == 1
        assert err.startswith("io error:")


class TestOutputPlumbing:
    def test_reports_byte_identical_across_runs(self, capsys):
        argv = ["classify", "--space", "ultrametric_product",
                "--params", '{"max_index": 5}']
        _, out1, _ = run(argv, capsys)
        _, out2, _ = run(argv, capsys)
        assert out1 == out2

    def test_out_flag_writes_file_and_silences_stdout(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out, err = run(
            ["growth", "--space", "int_line", "--window", "2",
             "--out", str(target)], capsys)
        assert code == 0 and out == "" and err == ""
        doc = json.loads(target.read_text(encoding="utf-8"))
        assert doc["kind"] == "growth-series"

    def test_unwritable_out_is_io_error(self, capsys):
        code, _, err = run(
            ["growth", "--space", "int_line", "--out", "/nonexistent/dir/report.json"],
            capsys)
        assert code == 1
        assert err.startswith("io error:")

    def test_csv_format_carries_same_numbers(self, tmp_path, capsys):
        argv = ["rates", "--space", "int_line", "--n", "0,2", "--radius", "2"]
        _, json_out, _ = run(argv + ["--format", "json"], capsys)
        _, csv_out, _ = run(argv + ["--format", "csv"], capsys)
        doc = json.loads(json_out)
        rows = list(csv.reader(io.StringIO(csv_out)))
        assert rows[0] == ["field", "value", "decimal"]
        cells = {r[0]: r[1] for r in rows[1:]}
        for i, row in enumerate(doc["report"]["rows"]):
            assert json.loads(cells[f"report.rows[{i}].count"]) == row["count"]
            assert json.loads(cells[f"report.rows[{i}].rate"]) == row["rate"]

    def test_no_command_errors(self, capsys):
        code, _, err = run([], capsys)
        assert code == 1
        assert err.startswith("config error:")

    def test_unknown_command_errors(self, capsys):
        code, _, err = run(["frobnicate"], capsys)
        assert code == 1
        assert err.startswith("config error:")
