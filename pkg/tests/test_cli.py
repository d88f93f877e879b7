"""Tests for the fqpencil command-line interface."""

import json

import pytest

from fqpencil.cli import run_command


def run_json(argv):
    code, text = run_command(argv)
    return code, json.loads(text)


def strip_timing(report):
    report = dict(report)
    report.pop("timing_seconds", None)
    return report


# ---------------------------------------------------------------------------
# Subcommands


def test_field_command():
    code, rep = run_json(["field", "--p", "3", "--k", "2"])
    assert code == 0
    assert rep["field"] == {"p": 3, "k": 2, "q": 9, "modulus": [1, 0, 1]}
    assert "modulus_str" in rep


def test_factor_command():
    code, rep = run_json(["factor", "--q", "7", "--poly", "x^2-1"])
    assert code == 0
    assert rep["unit"] == [1]
    assert sorted(rep["factors"]) == [["x+1", 1], ["x+6", 1]]


def test_curve_command():
    code, rep = run_json(["curve", "--q", "7", "--poly", "x^2+x-t"])
    assert code == 0
    assert rep["curve"]["d"] == 2
    assert rep["curve"]["smooth"] is True


def test_pencil_command_json():
    code, rep = run_json(["pencil", "--q", "7", "--poly", "x^2+x-t",
                          "--M", "0,1"])
    assert code == 0
    assert rep["histogram"]["counts"] == {"1+1": 3, "2": 3}
    assert rep["histogram"]["ramified"] == 2
    assert rep["histogram"]["total"] == 8
    (pd,) = rep["pencils"]
    assert pd["delta"] == "u^2+u+1"
    assert pd["generic"] is True


def test_pencil_command_csv():
    code, text = run_command(["pencil", "--q", "7", "--poly", "x^2+x-t",
                              "--M", "0,1", "--format", "csv"])
    assert code == 0
    assert text.splitlines() == [
        "pattern,count", "1+1,3", "2,3", "ramified,2", "total,8"]


def test_pencil_auto_base_point():
    code, rep = run_json(["pencil", "--q", "7", "--poly", "x^2+x-t"])
    assert code == 0
    assert rep["pencils"][0]["M"] == [[0], [1]]


def test_count_command_threshold():
    code, rep = run_json(["count", "--q", "7", "--poly", "x^2+x-t"])
    assert code == 0
    assert rep["count_full_degree"] == 18
    assert rep["count_inclusive"] == 25
    assert rep["verdict"] == "THRESHOLD_NOT_MET"


def test_bound_command():
    code, rep = run_json(["bound", "--q", "331", "--d", "2",
                          "--s", "1", "--N", "2", "--g", "1"])
    assert code == 0
    assert rep["app_threshold_ok"] is True
    assert rep["app_bound"] == pytest.approx(245.270506, abs=1e-5)
    assert rep["gj_rhs"] == pytest.approx(121.847816, abs=1e-5)


def test_search_command():
    code, rep = run_json(["search", "--q", "7", "--poly", "x^2+x-t",
                          "--poly", "t^3+x^3+1", "--smax", "3"])
    assert code == 0
    assert rep["witness"] == {"s": 2, "a": [1, 0], "b": [3, 1]}
    assert len(rep["verification"]) == 2


def test_conrad_command():
    code, rep = run_json(["conrad", "--q", "3", "--b", "5", "--D", "2"])
    assert code == 0
    assert rep["result"]["all_reducible"] is True
    assert rep["result"]["substitutions"] == 27


def test_conrad_negative_control_exit_one():
    code, rep = run_json(["conrad", "--q", "3", "--D", "1",
                          "--poly", "x^2+1"])
    assert code == 1
    assert rep["result"]["all_reducible"] is False
    assert rep["result"]["counterexample"] == "t"


# ---------------------------------------------------------------------------
# Errors and exit codes


def test_parse_error_exit_two():
    code, rep = run_json(["factor", "--q", "7", "--poly", "x^^2"])
    assert code == 2
    assert rep["error"]["type"] == "ParseError"
    assert rep["error"]["position"] == 2


def test_hypothesis_error_exit_two():
    code, rep = run_json(["count", "--q", "3", "--poly", "t^3+x^3+1"])
    assert code == 2
    assert rep["error"]["type"] == "HypothesisViolation"


def test_budget_error_exit_one():
    code, rep = run_json(["pencil", "--q", "7", "--poly", "x^2+x-t",
                          "--trial-budget", "0"])
    assert code in (1, 2)
    assert "error" in rep


def test_unknown_command_exit_two():
    code, _text = run_command(["frobnicate"])
    assert code == 2


def test_missing_field_spec_exit_two():
    code, rep = run_json(["factor", "--poly", "x^2+1"])
    assert code == 2
    assert rep["error"]["type"] == "FqPencilError"


# ---------------------------------------------------------------------------
# Determinism


def test_reports_byte_identical():
    argv = ["pencil", "--q", "7", "--poly", "x^2+x-t", "--M", "0,1"]
    runs = [run_json(argv) for _ in range(2)]
    assert strip_timing(runs[0][1]) == strip_timing(runs[1][1])


def test_thread_count_invariance():
    reports = []
    for threads in ("1", "4", "8"):
        code, rep = run_json(["count", "--q", "31", "--poly", "x^2+x-t",
                              "--threads", threads])
        assert code == 0
        reports.append(strip_timing(rep))
    assert reports[0] == reports[1] == reports[2]


def test_csv_and_json_agree():
    base = ["pencil", "--q", "7", "--poly", "x^2+x-t", "--M", "0,1"]
    _code, rep = run_json(base)
    _code, csv_text = run_command(base + ["--format", "csv"])
    counts = {}
    for line in csv_text.splitlines()[1:]:
        key, val = line.rsplit(",", 1)
        counts[key] = int(val)
    ramified = counts.pop("ramified")
    total = counts.pop("total")
    assert counts == rep["histogram"]["counts"]
    assert ramified == rep["histogram"]["ramified"]
    assert total == rep["histogram"]["total"]
