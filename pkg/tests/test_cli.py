from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ucf import cli
from ucf.cli import decimal_string, main
from ucf.family import top_layers
from ucf.ucfio import format_ucf, parse_ucf
from fractions import Fraction


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_check_base_case(tmp_path, capsys):
    path = write(tmp_path, "base.ucf", "1\n-\n")
    assert main(["check", path]) == 0
    out = capsys.readouterr().out
    assert "size: 2" in out
    assert "length: 1" in out
    assert "theorem1_bound: 2" in out
    assert "theorem1_tight: true" in out
    assert "reimer_holds: true" in out


def test_check_top_layers_json(tmp_path, capsys):
    path = write(tmp_path, "tl.ucf", format_ucf(top_layers(3, 1)))
    assert main(["check", path, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["family_size"] == 4
    assert payload["theorem1"] == 4
    assert payload["theorem1_tight"] is True
    assert payload["theta_at_phat"] == [4, 0]
    assert list(payload) == sorted(payload)


def test_check_csv(tmp_path, capsys):
    path = write(tmp_path, "base.ucf", "1\n-\n")
    assert main(["check", path, "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == cli.CHECK_CSV_HEADER
    assert lines[1] == "1,1,2,2,true,2,2,1,true,true"


def test_check_duplicate_line_is_usage_error(tmp_path, capsys):
    path = write(tmp_path, "dup.ucf", "1\n1\n")
    assert main(["check", path]) == 2
    assert "line 2" in capsys.readouterr().err


def test_check_missing_file(capsys):
    assert main(["check", "does-not-exist.ucf"]) == 2
    assert "no such file" in capsys.readouterr().err


def test_check_not_union_closed(tmp_path, capsys):
    path = write(tmp_path, "open.ucf", "1\n2\n")
    assert main(["check", path]) == 2
    captured = capsys.readouterr()
    assert "union_closed: false" in captured.out
    assert "1 2" in captured.err  # the missing union is named


def test_decompose_top_layers(tmp_path, capsys):
    path = write(tmp_path, "tl.ucf", format_ucf(top_layers(3, 1)))
    assert main(["decompose", path]) == 0
    out = capsys.readouterr().out
    assert "block 1:" in out
    assert "diff: 3" in out
    assert "residual: 1 2" in out
    assert "partition=true size=true closure=true shrink=true" in out


def test_decompose_base_case_notes_skip(tmp_path, capsys):
    path = write(tmp_path, "base.ucf", "1\n-\n")
    assert main(["decompose", path]) == 0
    out = capsys.readouterr().out
    assert "closure check skipped" in out


def test_decompose_json(tmp_path, capsys):
    path = write(tmp_path, "f.ucf", "1\n2\n1 2\n")
    assert main(["decompose", path, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["chain"] == ["1 2", "1"]
    assert payload["verification"]["partition_ok"] is True
    assert all(payload["verification"][key] is True for key in
               ("partition_ok", "size_ok", "closure_ok", "shrink_ok"))


def test_decompose_rejects_open_family(tmp_path, capsys):
    path = write(tmp_path, "open.ucf", "1\n2\n")
    assert main(["decompose", path]) == 2


def test_enumerate_exhaustive_n3(capsys):
    assert main(["enumerate", "--n", "3", "--exhaustive", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["families_checked"] == 90
    assert payload["theorem1_equalities"] == 4
    assert payload["theorem1_violations"] == 0


def test_enumerate_exhaustive_guard(capsys):
    assert main(["enumerate", "--n", "9", "--exhaustive"]) == 2
    assert "sampled" in capsys.readouterr().err


def test_enumerate_sampled(capsys):
    assert main(["enumerate", "--n", "5", "--samples", "300", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "families_checked: 300" in out
    assert "theorem1_violations: 0" in out


def test_enumerate_csv(capsys):
    assert main(["enumerate", "--n", "2", "--exhaustive", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "2,exhaustive,-,8,0,3,0,0,0,0,0"


def test_enumerate_failure_exit_code(monkeypatch, capsys):
    from ucf.enumeration import AuditReport

    broken = AuditReport(
        n=2, mode="exhaustive", seed=None, families_checked=8,
        theorem1_violations=1, theorem1_equalities=3, equality_mismatches=0,
        corollary21_violations=0, decomposition_failures=0,
        theorem2_violations=0, reimer_violations=0,
    )
    monkeypatch.setattr(cli.enumeration, "audit", lambda *a, **k: broken)
    assert main(["enumerate", "--n", "2", "--exhaustive"]) == 1


def test_enumerate_requires_mode():
    with pytest.raises(SystemExit) as err:
        main(["enumerate", "--n", "2"])
    assert err.value.code == 2


def test_theta_table(capsys):
    assert main(["theta-table", "--n-max", "12"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,k,prefix_sum,p_hat,theta_num,theta_exp,ratio"
    rows = {tuple(line.split(",")[:2]): line.split(",") for line in lines[1:]}
    assert rows[("10", "2")][2:6] == ["56", "6", "981", "2"]
    for n in range(1, 13):
        assert rows[(str(n), "1")][6] == "1.0"
        assert rows[(str(n), "1")][2] == str(n + 1)
        # the diagonal is exactly the full powerset count on both sides
        assert rows[(str(n), str(n))][2] == str(2**n)
        assert rows[(str(n), str(n))][4:7] == [str(2**n), "0", "1.0"]


def test_theta_table_range_check(capsys):
    assert main(["theta-table", "--n-max", "1001"]) == 2


def test_extremal_round_trip(tmp_path, capsys):
    out = tmp_path / "tl.ucf"
    assert main(["extremal", "--n", "3", "--ell", "1", "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert text.count("\n") == 4
    assert parse_ucf(text) == top_layers(3, 1)


def test_extremal_range_errors(capsys):
    assert main(["extremal", "--n", "25", "--ell", "1"]) == 2
    assert main(["extremal", "--n", "3", "--ell", "4"]) == 2


def test_closure_command(tmp_path, capsys):
    path = write(tmp_path, "gens.ucf", "1\n2\n")
    assert main(["closure", path]) == 0
    assert capsys.readouterr().out == "1\n2\n1 2\n"


def test_output_is_byte_deterministic(capsys):
    def run(argv):
        assert main(argv) == 0
        return capsys.readouterr().out

    argv = ["enumerate", "--n", "4", "--samples", "40", "--seed", "11", "--format", "csv"]
    assert run(argv) == run(argv)
    table = ["theta-table", "--n-max", "20"]
    assert run(table) == run(table)
    threaded = argv + ["--threads", "2"]
    assert run(threaded) == run(argv)


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "ucf", "--help"], capture_output=True, text=True
    )
    assert result.returncode == 0
    assert "union-closed" in result.stdout


def test_decimal_string_rendering():
    assert decimal_string(Fraction(1)) == "1.0"
    assert decimal_string(Fraction(0)) == "0.0"
    assert decimal_string(Fraction(981, 4) / 56) == "4.37946428571429"
    assert decimal_string(Fraction(-3, 2)) == "-1.5"
    assert decimal_string(Fraction(1, 3)) == "0.333333333333333"
    assert decimal_string(Fraction(10**40)) == "1.0e+40"
    assert decimal_string(Fraction(1, 10**6)) == "1.0e-6"
    assert decimal_string(Fraction(12345, 10000)) == "1.2345"
