import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from resolv251 import cli
from resolv251.complexes import Report

GOLDEN = Path(__file__).parent / "golden"


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("RESOLV_SEED", None)
    if env:
        e.update(env)
    p = subprocess.run([sys.executable, "-m", "resolv251", *args], capture_output=True, text=True, env=e)
    return p.returncode, p.stdout, p.stderr


@pytest.mark.parametrize("name", ["Q", "M", "B", "HB"])
def test_build_matches_golden(name, capsys):
    assert cli.main(["build", name]) == 0
    out = capsys.readouterr().out
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_build_hb_header(capsys):
    cli.main(["build", "HB"])
    assert json.loads(capsys.readouterr().out)["ranks"] == [2, 5, 4, 1]


def test_build_to_file(tmp_path):
    out = tmp_path / "q.json"
    assert cli.main(["build", "Q", "--out", str(out)]) == 0
    assert out.read_text() == (GOLDEN / "Q.json").read_text()


def test_exit_codes(tmp_path, capsys):
    assert cli.main(["build", "X"]) == 2
    assert cli.main(["verify", "nonsense"]) == 2
    assert cli.main(["verify", "mu", "--ring", "zz"]) == 2
    assert "2 to be a unit" in capsys.readouterr().err
    assert cli.main(["verify", "complex", "--trials", "0"]) == 2
    assert cli.main(["build", "Q", "--out", str(tmp_path / "missing" / "q.json")]) == 3
    assert cli.main(["report", "--out", str(tmp_path / "missing" / "r.json")]) == 3


def test_exit_one_on_failure(monkeypatch, capsys):
    monkeypatch.setitem(cli.SUITE_FUNCS, "phi", lambda cfg: [Report("phi", False, {}, {"row": 0})])
    assert cli.main(["verify", "phi"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is False
    assert data["results"]["phi"]["checks"][0]["failure"] == {"row": 0}


def test_verify_complex_M(capsys):
    assert cli.main(["verify", "complex", "--complex", "M"]) == 0
    data = json.loads(capsys.readouterr().out)
    checks = data["results"]["complex"]["checks"]
    assert len(checks) == 1 and checks[0]["details"]["composites"] == 2


def test_verify_mu_default_domain(capsys):
    assert cli.main(["verify", "mu"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["results"]["mu"]["checks"][0]["details"]["domain"] == "ZZ[1/2]"


def test_verify_all_deterministic():
    c1, o1, _ = run("verify", "all", "--seed", "42")
    c2, o2, _ = run("verify", "all", "--seed", "42")
    assert c1 == c2 == 0 and o1 == o2


def test_build_byte_identical_across_processes():
    outs = [run("build", "B")[1] for _ in range(2)]
    assert outs[0] == outs[1] == (GOLDEN / "B.json").read_text()


def test_resolv_seed_env(capsys):
    _, a, _ = run("verify", "exactness", "--complex", "Q", "--trials", "2", env={"RESOLV_SEED": "7"})
    _, b, _ = run("verify", "exactness", "--complex", "Q", "--trials", "2", "--seed", "7")
    _, c, _ = run("verify", "exactness", "--complex", "Q", "--trials", "2")
    assert a == b
    assert json.loads(c)["seed"] == 42 and json.loads(a)["seed"] == 7
    code, _, err = run("verify", "complex", env={"RESOLV_SEED": "x"})
    assert code == 2


def test_report(capsys):
    assert cli.main(["report"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == "resolv-251/1"
    assert {k: v["variables"] for k, v in data["complexes"].items()} == {"Q": 17, "M": 17, "B": 11, "HB": 11}
    assert all(data["verdicts"].values())
    assert "timing_seconds" not in data
    assert cli.main(["report", "--timing"]) == 0
    assert "timing_seconds" in json.loads(capsys.readouterr().out)


def test_text_format(capsys):
    assert cli.main(["verify", "gradings", "--format", "text"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4 and all(l.startswith("PASS") for l in lines)
