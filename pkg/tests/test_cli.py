import json
from pathlib import Path

from click.testing import CliRunner

from heegaard.cli import main, rational_str

DATA = Path(__file__).parent / "data"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_rational_str():
    assert rational_str(0) == "0"
    assert rational_str(-0.25) == "-1/4"
    assert rational_str(3) == "3"


def test_compute_json():
    r = run("--json", "compute", DATA / "d1.hdg")
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["theta_tilde"] == "1/4"
    assert out["J"] == [["1/2"]]
    assert {k: out[k] for k in ("ell2", "s_ell", "e")} == {"ell2": "0", "s_ell": "0", "e": "-1/4"}


def test_compute_flags_after_subcommand():
    assert run("compute", DATA / "s3.hdg", "--json").output == run("--json", "compute", DATA / "s3.hdg").output


def test_compute_text_is_deterministic():
    a = run("compute", DATA / "d2.hdg")
    b = run("compute", DATA / "d2.hdg")
    assert a.output == b.output
    assert "theta_tilde  -1/4" in a.output


def test_malformed_input():
    r = run("compute", DATA / "malformed.hdg")
    assert r.exit_code == 2
    assert "malformed.hdg:3:" in r.output


def test_verify_file():
    r = run("verify", DATA / "d2.hdg", "--checks", "twist", "--iters", 100)
    assert r.exit_code == 0
    assert "twist: pass (100 passed" in r.output


def test_verify_slide_skipped():
    r = run("--json", "verify", DATA / "d1.hdg", "--checks", "slide", "--iters", 3)
    assert r.exit_code == 0
    assert json.loads(r.output)["checks"]["slide"]["status"] == "skipped"


def test_verify_fuzz():
    r = run("verify", "--fuzz", "--checks", "w-change,m-change", "--iters", 10)
    assert r.exit_code == 0


def test_verify_needs_one_source():
    assert run("verify", "--checks", "twist").exit_code == 2
    assert run("verify", DATA / "d1.hdg", "--checks", "nonsense").exit_code == 2


def test_fuzz_report(tmp_path):
    r = run("--seed", 3, "fuzz", "--count", 4, "--steps", 10, "--report", tmp_path / "rep",
            "--out", tmp_path / "fail")
    assert r.exit_code == 0
    assert (tmp_path / "rep" / "fuzz.csv").read_text().count("\n") == 5
    assert (tmp_path / "rep" / "fuzz.png").stat().st_size > 0
    assert not (tmp_path / "fail").exists()
    again = run("--seed", 3, "fuzz", "--count", 4, "--steps", 10)
    assert again.output == r.output


def test_surgery_command():
    r = run("--json", "surgery", "--linking-matrix", DATA / "trefoil.txt")
    out = json.loads(r.output)
    assert out == {
        "g": 1,
        "lambda_prime": 1,
        "alexander": {"-1": 1, "0": -1, "1": 1},
        "delta_second_half": "1",
        "surgery_delta": 1,
    }
    r = run("--json", "surgery", "--linking-matrix", DATA / "figure_eight.txt", "--n", 3)
    assert json.loads(r.output)["surgery_delta"] == -3
    r = run("surgery", "--linking-matrix", DATA / "unknot.txt", "--emit", "lambda")
    assert "lambda_prime       0" in r.output and "alexander" not in r.output


def test_surgery_input_errors():
    assert run("surgery", "--linking-matrix", DATA / "not_symplectic.txt").exit_code == 2
    assert run("surgery", "--linking-matrix", DATA / "trefoil.txt", "--n", 0).exit_code == 2
