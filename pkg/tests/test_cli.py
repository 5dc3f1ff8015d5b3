import json
import subprocess
import sys

import pytest

from qgalois import cli
from qgalois.checks import SuiteResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_config(tmp_path, cfg):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def test_nf_u(capsys):
    code, out, _ = run(capsys, "nf", "U", "E1 F1")
    assert code == 0
    assert out == "-2/3 K1^-1 + 2/3 K1 + F1 E1\n"


def test_nf_default_and_flag(capsys):
    assert run(capsys, "nf", "E1 F1")[1] == "-2/3 K1^-1 + 2/3 K1 + F1 E1\n"
    assert run(capsys, "--algebra", "grU", "nf", "E1 F1")[1] == "F1 E1\n"
    assert run(capsys, "nf", "E1 F1", "--algebra", "grU")[1] == "F1 E1\n"


def test_nf_json(capsys):
    code, out, _ = run(capsys, "--json", "nf", "U", "E1 F1")
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0] == {"num": -2, "den": 3, "lower": [], "upper": [], "torus": [-1, 0]}
    assert recs[2] == {"num": 1, "den": 1, "lower": [1], "upper": [1], "torus": [0, 0]}


def test_mul(capsys):
    assert run(capsys, "mul", "Alambda", "Z1", "X2")[1] == "9/2 X2 Z1\n"
    assert run(capsys, "mul", "torus", "Z1", "Z2")[1] == "Z1 Z2\n"
    assert run(capsys, "mul", "torus", "Z2", "Z1")[1] == "1/9 Z1 Z2\n"


def test_hopf_commands(capsys):
    assert run(capsys, "delta", "E1")[1] == "K1 (x) E1 + E1 (x) 1\n"
    assert run(capsys, "coact", "Z1^-1")[1] == "Z1^-1 (x) K1^-1\n"
    assert run(capsys, "eps", "3 + E1")[1] == "3\n"
    assert run(capsys, "--json", "eps", "1/2 K1")[1] == '{"den": 2, "num": 1}\n'
    # -K1^-1 E1 normal-ordered: K1^-1 E1 = q^-2 E1 K1^-1
    assert run(capsys, "antipode", "E1")[1] == "-1/4 E1 K1^-1\n"
    code, out, _ = run(capsys, "--json", "delta", "K1")
    assert json.loads(out)["legs"][0]["torus"] == [1, 0]


def test_serre(capsys):
    assert run(capsys, "serre", "U", "upper", "1", "2")[1] == "E1^2 E2 - 5/2 E1 E2 E1 + E2 E1^2\n"
    assert run(capsys, "serre", "Alambda", "upper", "1", "2", "--weighted")[1] == "1/9 X1^2 X2 - 5/2 X1 X2 X1 + 9 X2 X1^2\n"
    assert run(capsys, "serre", "upper", "1", "1")[0] == 2
    assert run(capsys, "serre", "U", "middle", "1", "2")[0] == 2


def test_invariant(capsys):
    code, out, _ = run(capsys, "invariant")
    assert code == 0 and out == "u_12 = 9  lambda_12 = 3\n"
    rec = json.loads(run(capsys, "--json", "invariant")[1])
    assert rec == {"i": 1, "j": 2, "u": {"num": 9, "den": 1}, "lambda": {"num": 3, "den": 1}}


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "serre-transport")
    assert code == 0 and out.startswith("PASS serre-transport")
    code, out, _ = run(capsys, "--json", "--seed", "3", "verify", "ms-twist")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_failure_exit_code(capsys, monkeypatch):
    def broken(setting, rng):
        res = SuiteResult("broken")
        res.check(True, lambda: "")
        res.check(False, lambda: "E1 F1 vs F1 E1")
        return res

    monkeypatch.setitem(cli.SUITES, "broken", broken)
    code, out, _ = run(capsys, "verify", "broken")
    assert code == 1
    assert "FAIL broken" in out and "first counterexample: E1 F1 vs F1 E1" in out


def test_cap_option(capsys):
    code, out, _ = run(capsys, "--cap", "1", "verify", "lemma1")
    assert code == 0
    assert run(capsys, "--cap", "0", "verify", "lemma1")[0] == 2


def test_config_preset(capsys, tmp_path):
    path = write_config(tmp_path, {"cartan": {"family": "G2", "rank": 2}, "q": {"num": 3, "den": 2}, "lambda": [[1, 2, 5, 7]]})
    code, out, _ = run(capsys, "--config", path, "invariant")
    assert code == 0 and out == "u_12 = 25/49  lambda_12 = 5/7\n"
    assert run(capsys, "--config", path, "verify", "serre-transport")[0] == 0


def test_config_matrix(capsys, tmp_path):
    path = write_config(tmp_path, {"cartan": {"matrix": [[2, -2], [-1, 2]], "d": [1, 2]}, "q": {"num": 2}, "lambda": [[2, 1, 1, 4]]})
    code, out, _ = run(capsys, "--config", path, "invariant")
    assert code == 0 and out == "u_12 = 16  lambda_12 = 4\n"


@pytest.mark.parametrize(
    "cfg",
    [
        {"cartan": {"matrix": [[2, -1], [-2, 2]], "d": [1, 1]}},
        {"cartan": {"family": "D", "rank": 3}},
        {"cartan": {"family": "A"}},
        {"q": {"num": 1, "den": 1}},
        {"q": {"num": 2, "den": 0}},
        {"q": 1.5},
        {"lambda": [[1, 2, 0, 1]]},
        {"lambda": [[1, 2]]},
        [1, 2],
    ],
)
def test_bad_configs(capsys, tmp_path, cfg):
    code, _, err = run(capsys, "--config", write_config(tmp_path, cfg), "invariant")
    assert code == 2 and err.startswith("error:")


def test_unreadable_config(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "--config", str(bad), "invariant")[0] == 2
    assert run(capsys, "--config", str(tmp_path / "missing.json"), "invariant")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["nf", "U", "E1^-2"],
        ["nf", "U", "X1"],
        ["nf", "U", "E3"],
        ["nf", "Quux", "E1"],
        ["nf", "a", "b", "c"],
        ["verify", "nosuch"],
        ["--algebra", "Alambda", "delta", "X1"],
        ["--algebra", "U", "coact", "E1"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_byte_stable_subprocess():
    cmd = [sys.executable, "-m", "qgalois.cli", "--json", "coact", "X1 Y1 Z2^-1"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
