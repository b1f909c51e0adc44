import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from bialg import lie
from bialg.cli import main

SCHEMA = json.loads(resources.files("bialg").joinpath("schema/report.schema.json").read_text())
QUAT23_INVARIANT = '{"0,0": "3", "1,1": "2", "2,2": "1"}'


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_decide_sl2(capsys):
    code, rep = run_cli(capsys, "decide", "sl2")
    assert code == 0
    assert rep["result"]["triangular"]["status"] == "yes"
    assert rep["result"]["triangular"]["verification"]["cyb_zero"] is True


def test_decide_quat11(capsys):
    code, rep = run_cli(capsys, "decide", "quat:1,1")
    res = rep["result"]
    assert (res["triangular"]["status"], res["coboundary"]["status"]) == ("no", "yes")
    assert res["coboundary"]["witness"] == {"0,1": "1", "1,0": "-1"}


def test_cyb_symmetric_invariant(capsys):
    code, rep = run_cli(capsys, "cyb", "quat:2,3", "--r", QUAT23_INVARIANT)
    assert code == 0 and rep["result"]["wedge_coefficient"] == "6"


@pytest.mark.parametrize("argv", [
    ["validate", "heisenberg1"],
    ["classify", "slam:1,0,0,-1"],
    ["invariants", "quat:2,3", "--power", "2"],
    ["invariants", "abelian:2", "--power", "3"],
    ["delta", "heisenberg1", "--r", '{"0,1": "1", "1,0": "-1"}'],
    ["check-bialgebra", "heisenberg1", "--r", '{"0,1": "1", "1,0": "-1"}'],
    ["decide", "heisenberg2"],
    ["decide", "abelian:3"],
    ["witness", "slam:1,1,0,1"],
    ["witness", "abelian:2"],
    ["coboundary", "slam:0,1,2,0"],
    ["split", "-1", "-1"],
    ["split", "2", "3"],
    ["hilbert", "-1", "-1", "2"],
    ["hilbert", "3", "5", "inf"],
    ["prop2", "--alpha", "1/2", "--beta", "-3", "--samples", "5"],
])
def test_subcommands_succeed_and_match_schema(capsys, argv):
    code, rep = run_cli(capsys, *argv)
    assert code == 0 and "result" in rep


def test_invariants_dimension(capsys):
    _, rep = run_cli(capsys, "invariants", "quat:2,3")
    assert rep["result"]["dim"] == 1
    # echelon-normalized multiple of 3 e1(x)e1 + 2 e2(x)e2 + e3(x)e3
    assert rep["result"]["basis"] == [{"0,0": "1", "1,1": "2/3", "2,2": "1/3"}]


def test_split_reports(capsys):
    _, rep = run_cli(capsys, "split", "-1", "-1")
    assert rep["result"]["split"] is True
    assert rep["result"]["norm_form"]["witness"] == [1, 1, 0, 0]
    _, rep = run_cli(capsys, "split", "1", "1")
    assert rep["result"]["split"] is False and rep["result"]["norm_form"]["obstruction"] == "inf"


def test_invalid_algebra_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 3, "brackets": [
        {"i": 0, "j": 1, "value": {"0": "1"}},
        {"i": 1, "j": 2, "value": {"1": "1"}},
        {"i": 0, "j": 2, "value": {"2": "-1"}},
    ]}))
    code, rep = run_cli(capsys, "validate", str(path))
    assert code == 2 and rep["result"]["valid"] is False
    code, rep = run_cli(capsys, "decide", str(path))
    assert code == 2 and rep["error"]["kind"] == "axiom"


def test_failed_bialgebra_axioms_exit_2(capsys):
    code, rep = run_cli(capsys, "check-bialgebra", "sl2", "--r", '{"0,0": "1"}')
    assert code == 2 and rep["result"]["axioms"]["passes"] is False


@pytest.mark.parametrize("argv", [
    ["decide", "/nonexistent/algebra.json"],
    ["decide", "quat:0,1"],
    ["cyb", "sl2", "--r", '{"0,1": "1/0"}'],
    ["cyb", "sl2", "--r", '{"0,9": "1"}'],
    ["cyb", "sl2", "--r", '{"0,1": '],
    ["hilbert", "2", "3", "4"],
    ["split", "0", "1"],
    ["prop2", "--alpha", "x", "--beta", "1"],
])
def test_input_errors_exit_3(capsys, argv):
    code, rep = run_cli(capsys, *argv)
    assert code == 3 and rep["error"]["kind"] == "input" and rep["error"]["message"]


def test_usage_error_exit_3(capsys):
    assert main(["frobnicate"]) == 3
    assert main(["decide"]) == 3


def test_distinct_error_messages(capsys):
    messages = set()
    for argv in (["decide", "/nonexistent.json"], ["cyb", "sl2", "--r", '{"0,1": "a"}'],
                 ["cyb", "sl2", "--r", '{"0,9": "1"}']):
        _, rep = run_cli(capsys, *argv)
        messages.add(rep["error"]["message"])
    assert len(messages) == 3


def test_json_algebra_file(tmp_path, capsys):
    path = tmp_path / "h.json"
    path.write_text(json.dumps(lie.heisenberg(1).to_json()))
    code, rep = run_cli(capsys, "decide", str(path))
    assert code == 0 and rep["result"]["triangular"]["status"] == "no"


def test_text_format(capsys):
    assert main(["decide", "quat:1,1", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "triangular: no" in out and "coboundary: yes" in out


def test_height_bound_env(monkeypatch, capsys):
    monkeypatch.setenv("BIALG_HEIGHT_BOUND", "3")
    _, rep = run_cli(capsys, "split", "-1", "-1")
    assert rep["result"]["norm_form"]["height_bound"] == 3
    monkeypatch.setenv("BIALG_HEIGHT_BOUND", "nope")
    code, rep = run_cli(capsys, "split", "-1", "-1")
    assert code == 3


def test_byte_determinism():
    outputs = set()
    for _ in range(3):
        proc = subprocess.run([sys.executable, "-m", "bialg.cli", "prop2", "--alpha", "2", "--beta", "3", "--seed", "7"],
                              capture_output=True, check=True)
        outputs.add(proc.stdout)
    assert len(outputs) == 1
    a = subprocess.run([sys.executable, "-m", "bialg.cli", "decide", "slam:0,1,2,0"], capture_output=True).stdout
    b = subprocess.run([sys.executable, "-m", "bialg.cli", "decide", "slam:0,1,2,0"], capture_output=True).stdout
    assert a == b and a


def test_seed_changes_samples(capsys):
    _, first = run_cli(capsys, "prop2", "--alpha", "2", "--beta", "3", "--seed", "1", "--samples", "3")
    _, second = run_cli(capsys, "prop2", "--alpha", "2", "--beta", "3", "--seed", "2", "--samples", "3")
    assert first["result"]["samples"] != second["result"]["samples"]
    assert first["result"]["passes"] and second["result"]["passes"]
