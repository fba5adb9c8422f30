import csv
import io
import json
import subprocess
import sys

import pytest

from padecheb.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, main, published


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def run_json(*argv):
    status, text, _ = run(*argv, "--format", "json")
    return status, json.loads(text)


def test_approx_cos():
    status, rep = run_json("approx", "--function", "cos_pi4", "--m", "2", "--n", "3", "--parity", "even")
    assert status == EXIT_OK
    assert set(rep) >= {"config", "coefficients", "errors", "condition", "residuals", "notes"}
    assert len(rep["coefficients"]["a"]) == 4 and len(rep["coefficients"]["b"]) == 3
    assert 0.4e-13 / 3 <= float(rep["errors"]["abs"]) <= 0.4e-13 * 3
    assert 0.55e-13 / 3 <= float(rep["errors"]["rel"]) <= 0.55e-13 * 3


def test_approx_cross_exp():
    status, rep = run_json("approx", "--function", "exp", "--method", "cross", "--m", "2", "--n", "2")
    assert status == EXIT_OK
    assert 1.9e-4 / 3 <= float(rep["errors"]["abs"]) <= 1.9e-4 * 3


def test_approx_constant():
    status, rep = run_json("approx", "--function", "const_one", "--m", "0", "--n", "0")
    assert status == EXIT_OK and float(rep["errors"]["abs"]) == 0


def test_numbers_are_decimal_strings():
    _, rep = run_json("approx", "--function", "exp", "--m", "1", "--n", "1")
    assert all(isinstance(v, str) for v in rep["coefficients"]["a"])
    assert len(rep["coefficients"]["a"][0].replace("-", "").replace(".", "")) > 40


def test_reproducible_json():
    args = ("approx", "--function", "arctan", "--m", "3", "--n", "3", "--parity", "odd", "--format", "json")
    assert run(*args)[1] == run(*args)[1]


def test_csv_error_curve(tmp_path):
    path = tmp_path / "curve.csv"
    status, _, _ = run("approx", "--function", "exp", "--m", "1", "--n", "1", "--grid", "11",
                       "--format", "csv", "--output", str(path))
    assert status == EXIT_OK
    rows = list(csv.reader(path.open()))
    assert len(rows[0]) == 4 and len(rows) == 12
    x, f, r, d = (float(v) for v in rows[5])
    assert abs((f - r) - d) < 1e-12


@pytest.mark.parametrize("argv", [
    ("approx", "--function", "no_such_function"),
    ("approx", "--m", "-1"),
    ("approx", "--precision", "quadruple"),
    ("approx", "--grid", "1"),
    ("approx", "--method", "linear", "--taylor-N", "10"),
])
def test_bad_config(argv):
    status, rep = run_json(*argv)
    assert status == EXIT_CONFIG
    assert rep["error"]["kind"] == "config"


def test_numerical_failure():
    status, rep = run_json("approx", "--function", "const_one", "--method", "nonlinear", "--m", "1", "--n", "1")
    assert status == EXIT_NUMERICAL
    assert rep["error"]["kind"] == "numerical"


def test_text_error_goes_to_stderr():
    status, out, err = run("approx", "--function", "no_such_function")
    assert status == EXIT_CONFIG and out == "" and "config" in err


def test_precision_env(monkeypatch):
    monkeypatch.setenv("PADECHEB_PRECISION", "double")
    _, rep = run_json("approx", "--function", "exp", "--m", "1", "--n", "1")
    assert "arithmetic: double" in rep["notes"]


def test_table1_subset():
    status, rep = run_json("table1", "--rows", "sin_pi2,arctan")
    assert status == EXIT_OK
    rows = rep["rows"]
    assert rows and {r["function"] for r in rows} == {"sin_pi2", "arctan"}
    assert all(r["within_tolerance"] for r in rows)


def test_table2():
    status, rep = run_json("table2")
    assert status == EXIT_OK
    assert rep["summary"] == {"all_within_tolerance": True, "nonincreasing": True}
    assert [p["pair"] for p in rep["error_approximants"]] == [[15, 20], [25, 35], [40, 50]]


def test_autocorrect_control():
    status, rep = run_json("autocorrect", "--function", "exp", "--m", "0", "--n", "5")
    assert status == EXIT_OK
    assert rep["autocorrection"]["verdict"] == "no significant autocorrection"


def test_autocorrect_cos():
    status, rep = run_json("autocorrect", "--function", "cos_pi4", "--m", "2", "--n", "3",
                           "--parity", "even", "--precision", "double", "--drop-a0")
    assert status == EXIT_OK
    ea = rep["autocorrection"]["error_approximant"]
    assert 0.22e-6 / 3 <= float(ea["abs"]) <= 0.22e-6 * 3
    assert all(float(r) == 0.0 for r in ea["excluded_roots"])
    assert rep["autocorrection"]["verdict"] == "significant error autocorrection"


def test_published_data_is_bundled():
    data = published()
    assert len(data["linear_table"]["rows"]) == 23
    assert [p[0] for p in data["nonlinear_tan_table"]["error_approximant_pairs"]] == [15, 25, 40]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "padecheb.cli", "approx", "--m", "1", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout
