import json
import subprocess
import sys

import pytest

from azlinks.cli import main

F = "x^8 - 105*x^6 + 1400*x^4 - 2625*x^2 + 625"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_all_json(capsys):
    code, out, _ = run(capsys, "all", "--json")
    data = json.loads(out)
    assert code == 0
    assert [r["case"] for r in data] == ["W512", "L632", "L622"]
    assert all(r["extends"] is False for r in data)
    assert set(data[0]) == {"case", "components", "orders", "tame_symbol", "certificate", "extends", "elapsed_ms"}
    assert all(r["elapsed_ms"] is None for r in data)


def test_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "all", "--json")
    _, b, _ = run(capsys, "all", "--json")
    assert a == b


def test_timings(capsys):
    _, out, _ = run(capsys, "case", "l622", "--json", "--timings")
    assert json.loads(out)["elapsed_ms"] >= 0


def test_case_text(capsys):
    code, out, _ = run(capsys, "case", "w512")
    assert code == 0
    assert "x^2 - 4 is squarefree of degree 2" in out and "extends: false" in out


def test_word(capsys):
    assert run(capsys, "word", "--alpha", "12", "--beta", "5")[1].strip() == "baBAbabABab"
    assert run(capsys, "word", "--alpha", "8", "--beta", "2")[0] == 2


def test_jac(capsys):
    code, out, _ = run(capsys, "jac", "precompute", "--f", F)
    assert code == 0 and out.strip() == "V = x^4 - 105/2*x^2 - 5425/8"
    code, out, _ = run(capsys, "jac", "compose", "--f", F, "--a", "x^2-5x+5;0;1", "--b", "x^2+5x+5;0;1")
    assert out.strip() == "[x^4 - 15*x^2 + 25, 0, 2]*"
    code, out, _ = run(capsys, "jac", "add", "--json", "--f", F, "--a", "x^2-5x+5;0;1", "--b", "x^2+5x+5;0;1")
    assert json.loads(out) == {"result": "x^2;-25;0", "is_identity": False}
    code, out, _ = run(capsys, "jac", "adjust", "--f", F, "--star", "x^4 - 15*x^2 + 25;0;2")
    assert out.strip() == "[x^2, -25, 0]"


def test_jac_usage_errors(capsys):
    assert run(capsys, "jac", "add", "--f", F, "--a", "x;0;0")[0] == 2
    assert run(capsys, "jac", "add", "--f", F, "--a", "x;0;0", "--b", "1;0;2")[0] == 2
    assert run(capsys, "jac", "adjust", "--f", F, "--star", "x^5;0;0")[0] == 2
    assert run(capsys, "jac", "precompute", "--f", "x^2 + w")[0] == 2


def test_genus_and_divisor(capsys):
    assert run(capsys, "genus", "--plane", "9*x^2 + 9*y^2 - 2*x^2*y^2 - 36")[1].strip() == "1"
    assert run(capsys, "genus", "--plane", "y^2 - x^3")[1].strip() == "unsupported singularity"
    code, out, _ = run(capsys, "divisor", "--curve", "h", "--line", "-2")
    assert code == 0 and out.strip() == "div(x - (-2)) = 2*(-2, 0) - Q1 - Q2"


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--case", "l632", "--samples", "10", "--json", "--seed", "3")
    assert code == 0 and json.loads(out)[0]["ok"] is True
    code, _, _ = run(capsys, "validate", "--case", "l632", "--samples", "10", "--tol", "1e-30")
    assert code == 1


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        main(["case", "l999"])
    assert exc.value.code == 2


def test_console_module():
    proc = subprocess.run([sys.executable, "-m", "azlinks.cli", "word", "--alpha", "8", "--beta", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "baBABab"
