import contextlib
import io
import json
import shlex
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from orbitcones import cli
from orbitcones.cycles import DivisorClass, SimplicialCone
from orbitcones.embedding import Embedding

from cli_cases import CASES

GOLDEN = Path(__file__).parent / "golden"


def run(cmd):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(shlex.split(cmd))
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_and_deterministic(name):
    first = run(CASES[name])
    second = run(CASES[name])
    assert first == second
    code, out, err = first
    assert (GOLDEN / f"{name}.txt").read_text() == f"exit {code}\n{out}{err}"


def payload(cmd):
    code, out, err = run(cmd)
    assert code == 0, err
    rep = json.loads(out)
    assert rep["status"] == "ok"
    return rep["payload"]


def test_info_values():
    p = payload(CASES["info"])
    assert p["r"] == 4 and p["normalized"] == ["inf", "0", "1", "2"]
    assert p["fixed_points"] == 10
    assert p["canonical_class"] == ["-1", "-1", "-1", "-1"]
    assert Embedding.from_json({k: p[k] for k in ("r", "points", "normalized")}).r == 4


def test_verify_values():
    p = payload(CASES["verify"])
    assert p["equations_ok"] and [c["q"] for c in p["finite_fields"]] == [7, 11, 13]
    assert all(c["n_variety"] == c["n_constructive"] for c in p["finite_fields"])


def test_class_values_round_trip():
    p = payload(CASES["class_boundary"])
    assert p["divisor_class"] == ["0", "1", "1"]
    assert DivisorClass.from_json(p["divisor_class"]) == DivisorClass((0, 1, 1))
    p = payload("class --canonical --r 5 --json")
    assert p["divisor_class"] == ["-2/3"] * 5 and not p["integral"]
    p = payload("class --div-z 1,3 --r 5 --json")
    assert p["pairing"] == ["0"] * 5


def test_member_and_isomorphic_values():
    p = payload(CASES["member"])
    assert p["member"] is True and p["branch"] == "boundary d1X"
    p = payload(CASES["isomorphic"])
    assert p["isomorphic"] and p["moebius"] == "(0,1;1,0)"
    p = payload("isomorphic --a inf,0,1,2 --b inf,0,1,5 --json")
    assert p["isomorphic"] is False


def test_limit_rejects_point_outside():
    code, out, err = run(CASES["limit_rejected"])
    assert code == 1
    assert "not in X" in json.loads(err)["diagnostics"][0]


def test_cone_round_trip():
    p = payload(CASES["cone"])
    assert SimplicialCone.from_json(p["dual"]) == SimplicialCone(((1, 1), (1, -1)))
    p = payload("cone --r 4 --kind curve --json")
    assert p["dual_basis"] == "D"
    p = payload(CASES["decompose"])
    assert [Fraction(c) for c in p["coefficients"]] == [Fraction(1, 2), Fraction(-1, 2)] and not p["inside"]


@pytest.mark.parametrize(
    "cmd",
    [
        "info",
        "info --points inf,0,zz",
        "info --points inf,0,1 --bogus",
        "nonsense --points 1,2,3",
        "limit --points inf,0,1,2 --at 1,2,3,4 --dir up",
        "class --r 4 --boundary 1 --canonical",
    ],
)
def test_usage_errors_exit_2(cmd):
    assert run(cmd)[0] == 2


@pytest.mark.parametrize(
    "cmd",
    [
        "info --points 1,1,2",
        "info --points 1,2",
        "form --factors 1:0:3,0:1:5",
        "verify --points inf,0,1,8 --ff 7",
        "decompose --generators 1,2;2,4 --vector 1,1",
        "member --points inf,0,1,2 --at 1,2,3",
        "class --boundary 7 --r 4",
    ],
)
def test_precondition_errors_exit_1(cmd):
    code, out, err = run(cmd)
    assert code == 1 and "error" in err


def test_internal_failure_exit_3(monkeypatch):
    from orbitcones import embedding

    monkeypatch.setattr(embedding, "count_points_ff", lambda X, q: embedding.FFCount(q, 1, 2))
    code, out, err = run("verify --points inf,0,1,2 --ff 7")
    assert code == 3 and "internal invariant failure" in err


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(f"member --points inf,0,1,2 --at 0,5,5,5 --out {target}")
    assert code == 0
    rep = json.loads(target.read_text())
    assert rep["payload"]["member"] is True and rep["verb"] == "member"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "orbitcones", "class", "--boundary", "1", "--r", "3"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert "divisor_class: (0, 1, 1)" in res.stdout
