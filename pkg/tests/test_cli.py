import json
import shutil
import subprocess

import pytest

from unramforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cheb_text(capsys):
    code, out, _ = run(capsys, "cheb", "--n", "5")
    assert code == 0 and out.strip() == "x^5 - 5*x^3 + 5*x"


def test_lucas_number(capsys):
    code, out, _ = run(capsys, "lucas", "--i", "7")
    assert code == 0 and out.strip() == "29"


def test_construct_pn_json(capsys):
    code, out, _ = run(capsys, "construct-pn", "--orbit", "sqrt-47", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["poly"] == ["443629", "5860", "-2605", "-10", "0", "1"]


def test_construct_pn_reports_discrepancy(capsys):
    code, out, _ = run(capsys, "construct-pn", "--orbit", "sqrt-235")
    assert code == 0
    assert "5860*x + 167504" in out and "discrepancy" in out


def test_construct_pn_orbit_file(capsys, tmp_path):
    f = tmp_path / "o.json"
    f.write_text(json.dumps({"kind": "values", "n": 5, "b": {str(i): "1" for i in range(1, 5)}}))
    code, out, _ = run(capsys, "construct-pn", "--orbit", str(f))
    assert code == 0 and out.strip().startswith("x^5")


def test_dual_orbit(capsys):
    code, out, _ = run(capsys, "dual-orbit", "--orbit", "sqrt-47")
    assert code == 0 and "x^4 - 47*x^3 + 519*x^2 + 47*x + 1" in out


def test_admissible(capsys):
    code, out, _ = run(capsys, "admissible", "--theorem", "2", "--p", "3", "--k", "1", "--j", "29")
    assert code == 0 and out.startswith("admissible")


def test_family_enumerate(capsys):
    code, out, _ = run(capsys, "family", "enumerate", "T9", "--from", "0", "--to", "49")
    assert code == 0 and out.split() == ["0", "5", "8", "17", "20", "25"]


def test_family_lucas_negative_range(capsys):
    code, out, _ = run(capsys, "family", "lucas", "T5", "--i", "-2..3")
    assert code == 0 and len(out.strip().splitlines()) == 6


def test_family_specialize_out(capsys, tmp_path):
    dest = tmp_path / "inst.json"
    code, _, _ = run(capsys, "family", "specialize", "T4", "--t", "1", "--out", str(dest))
    assert code == 0 and json.loads(dest.read_text())


@pytest.mark.parametrize("fid,t,code", [("T4", 1, 0), ("T6", -52, 2)])
def test_certify_exit_codes(capsys, fid, t, code):
    got, out, _ = run(capsys, "certify", fid, "--t", str(t), "--json")
    assert got == code
    assert json.loads(out)["verdict"] == {0: "pass", 2: "fail"}[code]


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--poly", "x^5+x^4+x^3-x^2-2*x-1", "--expected", "D5",
                       "--bound", "2000", "--workers", "1", "--json")
    assert code == 0 and json.loads(out)["group"] == "D5"
    code, _, _ = run(capsys, "scan", "--poly", "x^5+x^4+x^3-x^2-2*x-1", "--expected", "Z5",
                     "--bound", "2000", "--workers", "1")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["family", "show", "T99"],
    ["cheb"],
    ["scan", "--poly", "x^^2", "--expected", "D5"],
    ["nope"],
])
def test_usage_errors_exit_64(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 64


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("FORGE_SEED", "abc")
    code, _, err = run(capsys, "certify", "T4", "--t", "1")
    assert code == 64 and "FORGE_SEED" in err


def test_seed_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("FORGE_SEED", "5")
    _, out, _ = run(capsys, "certify", "T4", "--t", "1", "--json", "--seed", "0")
    assert json.loads(out)["seed"] == 5


@pytest.mark.skipif(shutil.which("forge") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["forge", "lucas", "--i", "7"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "29"
