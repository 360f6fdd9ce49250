import json

import pytest

from ellipticlie.cli import run


def run_json(capsys, *argv):
    code = run(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_delta_cubic(capsys):
    code, rep, _ = run_json(capsys, "relations", "delta-cubic")
    assert code == 0 and rep["status"] == "pass"


def test_delta_cubic_perturbed(capsys):
    code, rep, _ = run_json(capsys, "relations", "delta-cubic", "--perturb", "raw:0:1")
    assert code == 1 and rep["status"] == "fail"


def test_cocycles_minus(capsys):
    code, rep, _ = run_json(capsys, "cocycles", "--weight", "12", "--minus")
    assert code == 0 and rep["payload"]["dim"] == 1
    assert rep["payload"]["basis"][0][0] == {"monomial": "a^9 b^1", "coeff": "1"}


def test_deterministic_output(capsys):
    outs = [run_json(capsys, "bridge", "ihara-takao", "--weight", "12")[2] for _ in range(2)]
    assert outs[0] == outs[1]
    assert "seconds" not in outs[0]


def test_timing_flag(capsys):
    _, rep, _ = run_json(capsys, "lie", "basis", "--mu", "2,1", "--timing")
    assert "seconds" in rep


def test_usage_errors(capsys):
    assert run(["nonsense"]) == 2
    assert run(["cocycles", "--weight", "12", "--bogus"]) == 2
    assert run(["epsilon", "--n", "3"]) == 2
    assert run(["lie", "basis", "--mu", "x"]) == 2
    capsys.readouterr()


def test_lie_and_depth(capsys):
    code, rep, _ = run_json(capsys, "lie", "basis", "--mu", "3,2", "--alphabet", "X")
    assert code == 0 and rep["payload"]["dim"] == rep["payload"]["witt_dim"] == 2
    code, rep, _ = run_json(capsys, "depth", "member", "[T,A]", "--d", "2")
    assert code == 0 and rep["payload"]["member"] is False
    code, rep, _ = run_json(capsys, "depth", "basis", "--algebra", "AT", "--d", "2", "--mu", "3,4")
    assert rep["payload"]["dim"] > 0
    code, rep, _ = run_json(capsys, "depth", "convolution", "--m", "6")
    assert code == 0


def test_epsilon(capsys):
    code, rep, _ = run_json(capsys, "epsilon", "--n", "6")
    assert code == 0 and rep["payload"]["annihilates_theta"]


def test_bridge_commands(capsys):
    code, rep, _ = run_json(capsys, "bridge", "embed", "--expr", "[X0,X1]", "--K", "5")
    assert code == 0 and rep["payload"]["K"] == 5
    code, rep, _ = run_json(capsys, "bridge", "strictness", "--d", "1", "--mu", "1,0")
    assert code == 0 and rep["payload"]["negative_certified"]
    code, _, _ = run_json(capsys, "bridge", "ihara-takao", "--coeffs", "1,0,0,-1")
    assert code == 1
    code, _, _ = run_json(capsys, "bridge", "r0", "--K", "8")
    assert code == 0


def test_relations_commands(capsys):
    code, rep, _ = run_json(capsys, "relations", "quadratic", "--weight", "12")
    assert code == 0 and rep["payload"]["reduced_dim"] == 1
    code, rep, _ = run_json(capsys, "relations", "depth", "--weight", "12", "--d", "3")
    assert code == 0 and rep["payload"]["kernel_dim"] == 1
    code, rep, _ = run_json(capsys, "relations", "arithmetic-head", "--m", "2", "--n", "3")
    assert code == 0


def test_wtfilt(capsys, tmp_path):
    m = tmp_path / "n.json"
    w = tmp_path / "w.json"
    m.write_text(json.dumps([["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]]))
    w.write_text(json.dumps([{"index": -1, "basis": [["1", "0", "0"], ["0", "1", "0"]]},
                             {"index": 0, "basis": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}]))
    code, rep, _ = run_json(capsys, "wtfilt", "--matrix", str(m))
    assert code == 0 and rep["payload"]["graded_dims"] == {"-1": 1, "0": 1, "1": 1}
    code, rep, _ = run_json(capsys, "wtfilt", "--matrix", str(m), "--relative", "--w", str(w))
    assert code == 1 and rep["payload"]["certified_nonexistence"]
    assert run(["wtfilt", "--matrix", str(tmp_path / "missing.json")]) == 2


def test_human_output(capsys):
    assert run(["cocycles", "--weight", "12"]) == 0
    out = capsys.readouterr().out
    assert "status: pass" in out


@pytest.mark.slow
def test_verify_all_subset(capsys):
    code, rep, _ = run_json(capsys, "verify-all", "--only", "1", "8", "9", "11")
    assert code == 0
    assert [c["criterion"] for c in rep["payload"]["checks"]] == [1, 8, 9, 11]
