import json
import subprocess
import sys

import pytest

from schurlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_schur_commands(capsys):
    code, out, _ = run(capsys, "schur", "--partition", "2,0", "--vars", "2", "--method", "both")
    assert code == 0 and out.splitlines()[0] == "u1 + u2" and "==" in out
    assert run(capsys, "schur", "--partition", "1,0", "--vars", "2")[1].strip() == "1"
    assert run(capsys, "schur", "--partition", "2,2", "--vars", "2")[1].strip() == "0"


@pytest.mark.parametrize(
    "argv",
    [
        ["schur", "--partition", "0,2", "--vars", "2"],
        ["schur", "--partition", "x", "--vars", "2"],
        ["schur", "--partition", "2,0", "--vars", "3", "--method", "bialternant"],
        ["verify", "cauchy", "--n", "2", "--u", "1,2"],
        ["verify", "cauchy", "--n", "2", "--u", "1,2", "--v", "1,3", "--degree", "99"],
        ["verify", "tsymm", "--n", "2", "--u", "1,2", "--v", "1,3"],
        ["verify", "cauchy", "--n", "9", "--random"],
        ["verify", "nonsense", "--n", "2"],
        ["preserve", "--n", "3"],
        ["preserve", "--poly", "1,1", "--power", "2"],
        ["preserve", "--poly", "1,1", "--u", "1/2,1/2,1/3"],
        ["preserve", "--poly", "1,1", "--p", "1"],
        ["admissible", "--profile", "1,0", "--n", "3"],
        ["admissible", "--profile", "exp", "--n", "2", "--tuple", "2,0"],
        [],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    assert main(argv) == 2


def test_verify_examples(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "verify", "cauchy", "--n", "2", "--u", "1,2", "--v", "1,3", "--degree", "3", "--json", str(path))
    assert code == 0 and "2*t + 24*t^2 + 194*t^3" in out
    rep = json.loads(path.read_text())
    assert rep["schema"] == 1 and rep["prng"] == "splitmix64"
    assert rep["lhs_coeffs"] == ["0", "2", "24", "194"] and rep["match"]
    code, out, _ = run(capsys, "verify", "frobenius", "--n", "2", "--c", "2", "--u", "1,2", "--v", "1,3", "--degree", "2")
    assert code == 0 and "-2*t - 24*t^2" in out
    assert main(["verify", "tsymm", "--n", "3", "--random", "--seed", "7", "--degree", "8"]) == 0
    assert main(["verify", "phorn", "--n", "3", "--random", "--seed", "7", "--degree", "8"]) == 0
    assert main(["verify", "cauchy", "--n", "2", "--symbolic", "--degree", "4"]) == 0


def test_rational_inputs_serialize_as_strings(capsys, tmp_path):
    path = tmp_path / "f.json"
    assert main(["verify", "frobenius", "--n", "2", "--c", "1/2", "--u", "1/3,2", "--v", "1,3", "--degree", "3", "--json", str(path)]) == 0
    rep = json.loads(path.read_text())
    assert rep["u"] == ["1/3", "2"]
    assert all(isinstance(c, str) for c in rep["lhs_coeffs"] + rep["regrouped_coeffs"])


def test_preserve_examples(capsys):
    code, out, _ = run(capsys, "preserve", "--power", "0.5", "--n", "3", "--a", "1", "--eps", "1", "--grid", "200")
    assert code == 1 and "VIOLATION" in out
    assert main(["preserve", "--power", "0.5", "--n", "2", "--a", "1", "--eps", "1", "--grid", "200"]) == 0
    assert main(["preserve", "--poly", "1,1,1", "--n", "3", "--a", "0", "--eps", "1"]) == 0
    code, out, _ = run(capsys, "preserve", "--poly", "1,1,-1,1,1", "--n", "3", "--unbounded")
    assert code == 1 and "sign check (unbounded): FAIL" in out


def test_preserve_series_file(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"base_point": "0", "coeffs": ["1", "1", "1/2", "1/6"], "complete": True}))
    assert main(["preserve", "--series-file", str(path), "--n", "3", "--grid", "20"]) == 0
    path.write_text(json.dumps({"base_point": "1", "coeffs": ["1"]}))
    assert main(["preserve", "--series-file", str(path), "--n", "2"]) == 2
    assert main(["preserve", "--series-file", str(tmp_path / "missing.json")]) == 2


def test_admissible_examples(capsys):
    assert run(capsys, "admissible", "--profile", "exp", "--n", "2", "--tuple", "0,2")[1].strip() == "not admissible"
    assert run(capsys, "admissible", "--profile", "monomial:2", "--n", "2")[1].strip() == "ALL_ADMISSIBLE"
    assert run(capsys, "admissible", "--profile", "exp", "--n", "3")[1].strip() == "threshold (0,1,2), sum 3"
    assert run(capsys, "admissible", "--profile", "1,0", "--n", "3", "--complete")[1].strip() == "ALL_ADMISSIBLE"


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "tsymm", "--n", "3", "--random", "--seed", "5", "--degree", "6", "--json", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    for path in (a, b):
        assert main(["suite", "--scale", "smoke", "--seed", "3", "--json", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_different_seeds_draw_different_vectors(tmp_path):
    reps = []
    for seed in (1, 2):
        path = tmp_path / f"{seed}.json"
        main(["verify", "cauchy", "--n", "3", "--random", "--seed", str(seed), "--json", str(path)])
        reps.append(json.loads(path.read_text()))
    assert (reps[0]["u"], reps[0]["v"]) != (reps[1]["u"], reps[1]["v"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "schurlab", "schur", "--partition", "3,0", "--vars", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "u1^2 + u1*u2 + u2^2"
