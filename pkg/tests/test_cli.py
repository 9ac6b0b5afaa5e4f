import csv
import io
import json
import subprocess
import sys

import pytest

from solvcover.cli import FORMAT_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


def test_zariski_bound(capsys):
    code, doc = structured(capsys, "zariski-bound", "--degree", "8")
    assert code == 0
    assert doc["rows"][0]["l"] == 3 and doc["rows"][0]["l_general"] == 2
    assert doc["schema_version"] == 1


def test_dim_bound_fraction_string(capsys):
    code, doc = structured(capsys, "dim-bound", "--genus", "7", "--degree", "8")
    assert code == 0
    assert doc["rows"][0]["bound_exact"] == "19/3"
    assert doc["rows"][0]["bound_floor"] == 6


def test_scan_summary(capsys):
    code, doc = structured(capsys, "scan", "--genus", "7", "--dmax", "100")
    assert code == 0
    s = doc["summary"]
    assert s["max_rational"] == "8" and s["argmax_rational"] == [5, 16]
    assert s["max_elliptic"] == "6" and s["max_elliptic_plus_modulus"] == "7"
    assert s["d8_rational_without_mersenne"] == "11"
    assert "tails" not in s
    _, doc = structured(capsys, "scan", "--genus", "7", "--dmax", "100", "--show-tails")
    assert doc["summary"]["tails"][-1]["p"] == "p>dmax"


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "dim-bound", "--genus", "7", "--degree", "6")
    assert code == 2 and "NotPrimePower" in err
    code, _, _ = run(capsys, "scan", "--genus", "7", "--dmax", "4")
    assert code == 2
    code, _, _ = run(capsys, "enumerate", "--degree", "3", "--points", "2", "--budget", "0")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["dim-bound", "--genus", "7"])
    assert exc.value.code == 2


def test_budget_stop_exit_3(capsys):
    code, doc = structured(capsys, "check-tuples", "--degree", "6", "--points", "3")
    assert code == 3 and doc["summary"]["partial"] is True
    code, doc = structured(capsys, "enumerate", "--degree", "5", "--points", "4", "--budget", "10")
    assert code == 3 and "BudgetExceeded" in doc["summary"]["error"]
    code, _, _ = run(capsys, "census", "--degree", "17")
    assert code == 3


def test_violation_exit_1(capsys, monkeypatch):
    from solvcover import affine

    monkeypatch.setattr(affine, "fixed_point_bound", lambda d: 0)
    code, doc = structured(capsys, "census", "--degree", "5")
    # the regular C5 fixes nothing, so only D5 and AGL(1,5) violate
    assert code == 1 and doc["summary"]["violations"] == 2


def test_census_and_verify(capsys):
    code, doc = structured(capsys, "census", "--degree", "8")
    assert code == 0 and doc["summary"]["groups"] == 2
    assert all(r["max_fixed_points"] <= 2 for r in doc["rows"])
    code, doc = structured(capsys, "census", "--degree", "16")
    assert code == 0 and doc["summary"]["exhaustive"] is False and "warning" in doc["summary"]
    code, doc = structured(capsys, "verify-section2", "--dmax", "7")
    assert code == 0 and doc["summary"]["empty_degrees"] == [6]


def test_tuple_commands(capsys):
    code, doc = structured(capsys, "check-tuples", "--degree", "4", "--points", "3")
    assert code == 0 and doc["summary"]["violations"] == 0
    assert doc["summary"]["fixed_bound_tight"] and doc["summary"]["b_bound_tight"]
    code, doc = structured(capsys, "enumerate", "--degree", "3", "--points", "2")
    assert code == 0 and len(doc["rows"]) == 2
    code, doc = structured(capsys, "enumerate", "--degree", "4", "--points", "3",
                           "--filter", "primitive", "--filter", "solvable", "--limit", "3")
    assert len(doc["rows"]) == 3 and doc["config"]["filter"] == ["primitive", "solvable"]
    code, doc = structured(capsys, "genus-census", "--degree", "2", "--points", "6")
    assert code == 0 and doc["rows"][0]["genus"] == 2


def test_surface_check(capsys):
    code, doc = structured(capsys, "surface-check")
    assert code == 0 and doc["summary"]["passed"] is True
    assert len(doc["rows"]) == 16


def test_csv_and_table(capsys):
    code, out, _ = run(capsys, "scan", "--genus", "4", "--dmax", "20", "--format", "csv")
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    rows = list(csv.DictReader(io.StringIO("\n".join(lines))))
    assert rows[0].keys() >= {"d", "p", "k", "l", "target", "bound_exact", "bound_floor"}
    assert "# max_rational: 13/2" in out
    code, out, _ = run(capsys, "zariski-bound", "--degree", "16", "--format", "table")
    assert out.splitlines()[0].startswith("# zariski-bound")
    assert "# config.degree: 16" in out


def test_format_env_and_output_file(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(FORMAT_ENV, "structured")
    code, out, _ = run(capsys, "zariski-bound", "--degree", "9")
    assert json.loads(out)["rows"][0]["l"] == 3
    target = tmp_path / "r.csv"
    code, out, _ = run(capsys, "zariski-bound", "--degree", "9", "--format", "csv", "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("# zariski-bound")


def test_reports_are_byte_identical(capsys):
    for fmt in ("table", "csv", "structured"):
        _, a, _ = run(capsys, "census", "--degree", "9", "--format", fmt)
        _, b, _ = run(capsys, "census", "--degree", "9", "--format", fmt)
        assert a == b


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "solvcover", "zariski-bound", "--degree", "5",
                          "--format", "structured"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["summary"]["l"] == 2
