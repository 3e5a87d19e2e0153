import json
import subprocess
import sys

import pytest

from weylcheck.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--model", "e8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["fail"] == 0 and doc["summary"]["total"] == len(doc["results"])


def test_verify_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--model", "e10", "--format", "json", "--out", str(a))[0] == 0
    assert run(capsys, "verify", "--model", "e10", "--format", "json", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_failure_exit_code(capsys, tmp_path):
    suite = tmp_path / "bad.suite"
    suite.write_text("MODEL E8\nREL ok | [A-, A+] = 0 | fine\nREL bad | [L1, R] = 7*L1^2 | perturbed\n")
    code, out, _ = run(capsys, "verify", "--suite", str(suite))
    assert code == 1
    assert "FAIL   bad" in out and "PASS   ok" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "/no/such/file.suite"],
        ["verify", "--model", "e9"],
        ["frobnicate"],
        ["states", "--model", "e10"],
        ["states", "--phi", "1"],
        ["matrix", "--model", "e8"],
        ["matrix", "--model", "e10", "--op", "A+", "--cutoff", "2"],
        ["matrix", "--model", "e10", "--spec", "s=0,a3=3"],
        ["explore", "--n", "0..3"],
        ["explore", "--cap", "0"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_syntax_error_in_suite(capsys, tmp_path):
    suite = tmp_path / "broken.suite"
    suite.write_text("MODEL E8\nREL x | [A-, = 0 | oops\n")
    code, _, err = run(capsys, "verify", "--suite", str(suite))
    assert code == 2 and "broken.suite:2" in err


def test_states_phi(capsys):
    code, out, _ = run(capsys, "states", "--model", "e8", "--phi", "0,1")
    assert code == 0
    assert out.startswith("phi(0,1) = ((-1)*s*z + a3*s^-1*zb^-3) * exp(")
    code, out, _ = run(capsys, "states", "--model", "e10", "--phi", "1,2", "--format", "json")
    assert json.loads(out)["phi"] == [1, 2]


def test_states_table(capsys):
    code, out, _ = run(capsys, "states", "--model", "e10", "--table", "3", "--format", "json")
    rows = json.loads(out)["states"]
    assert [(r["m"], r["n"]) for r in rows] == [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1)]


def test_explore_r_table(capsys):
    code, out, _ = run(capsys, "explore", "--model", "e8", "--family", "R", "--n", "1..4", "--format", "json")
    assert code == 0
    assert [f["minimal"] for f in json.loads(out)["findings"]] == [1, 3, 3, 5]


def test_explore_cap_reported(capsys):
    code, out, _ = run(capsys, "explore", "--model", "e8", "--family", "R", "--n", "4", "--cap", "2")
    assert code == 0 and "minimal=-" in out


def test_matrix_text(capsys):
    code, out, _ = run(capsys, "matrix", "--model", "e10", "--op", "L1", "--cutoff", "4")
    assert code == 0 and "Jordan blocks [3, 2, 2, 1, 1]" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weylcheck", "states", "--phi", "0,0"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("phi(0,0) = (1)")
