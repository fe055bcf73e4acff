import json
import subprocess
import sys

import pytest

from bvloop.cli import main
from bvloop.report import VerificationReport
from bvloop.spaces import SpaceSpec
from bvloop.tables import RingTable, parse_degrees


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ring_text(capsys):
    code, out, _ = run(capsys, "ring", "--space", "hp:2", "--degrees", "-8..12")
    assert code == 0
    assert any(line.split()[:2] == ["2", "Z_3"] for line in out.splitlines())
    code, out, _ = run(capsys, "ring", "--space", "op2", "--degrees", "0..0")
    assert code == 0
    assert out.strip().splitlines()[-1].split()[:2] == ["0", "Z"]


def test_ring_json_schema_and_golden(capsys):
    code, out, _ = run(capsys, "ring", "--space", "hp:3", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert list(d) == ["space", "shift", "generators", "relations", "torsion", "groups"]
    assert d["space"] == "hp:3" and d["shift"] == 12
    assert d["generators"] == [
        {"name": "a", "degree": -4, "parity": "even"},
        {"name": "b", "degree": -1, "parity": "odd"},
        {"name": "x", "degree": 14, "parity": "even"},
    ]
    assert d["relations"] == ["a^4", "b^2", "a^3*b"]
    assert d["torsion"] == [{"modulus": 4, "monomial": "a^3*x"}]
    groups = {g["degree"]: (g["rank"], g["torsion"]) for g in d["groups"]}
    assert groups[-12] == (1, []) and groups[2] == (0, [4]) and groups[16] == (0, [4])
    assert groups[-13] == (0, []) and groups[-11] == (0, [])
    assert min(groups) == -13 and max(groups) == 42


@pytest.mark.parametrize("space", ["hp:1", "hp:3", "op2", "s8"])
def test_json_round_trip(space):
    table = RingTable.build(SpaceSpec.parse(space))
    again = RingTable.from_json(table.to_json())
    assert again == table
    assert again.to_json() == table.to_json()


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--space", "hp:2", "--suite", "bv", "--out", str(path))
    assert code == 0 and "[PASS]" in out
    report = VerificationReport.from_json(path.read_text())
    assert report.passed and report.suite == "bv"
    assert VerificationReport.from_json(report.to_json()).to_dict() == report.to_dict()


@pytest.mark.parametrize("argv,expected", [
    (["delta", "--space", "hp:2", "a*b*x"], "4·a*x"),
    (["delta", "--space", "op2", "b"], "2·1"),
    (["delta", "--space", "hp:3", "x^2"], "0"),
])
def test_delta(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_delta_of_zero_monomial(capsys):
    code, out, err = run(capsys, "delta", "--space", "hp:2", "a^3*b")
    assert code == 0 and out.strip() == "0" and "zero" in err


@pytest.mark.parametrize("argv", [
    ["ring", "--space", "cp:2"],
    ["ring", "--space", "hp:2", "--degrees", "5..1"],
    ["ring", "--space", "hp:2", "--degrees", "x"],
    ["delta", "--space", "hp:2", "q^2"],
    ["verify", "--space", "hp:2", "--suite", "nope"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


@pytest.mark.parametrize("space,suite", [("hp:2", "bv"), ("op2", "ss"), ("hp:1", "all")])
def test_verify_passes(capsys, space, suite):
    code, out, _ = run(capsys, "verify", "--space", space, "--suite", suite)
    assert code == 0, out
    if space == "hp:1":
        assert "s4_agreement" in out


def test_duality_suite_unavailable_for_sphere(capsys):
    code, _, err = run(capsys, "verify", "--space", "s8", "--suite", "duality")
    assert code == 2 and "Hopf model" in err
    code, out, _ = run(capsys, "verify", "--space", "s8", "--suite", "all", "--format", "json")
    assert code == 0 and json.loads(out)["parameters"]["skipped"] == ["duality"]


def test_verification_failure_exits_1(capsys, monkeypatch):
    from bvloop import verify

    def broken(space, max_q, **kw):
        rep = VerificationReport("bv", space.label)
        rep.add("forced", False, "injected failure")
        return rep

    monkeypatch.setattr(verify, "verify_bv", broken)
    code, out, _ = run(capsys, "verify", "--space", "hp:2", "--suite", "bv")
    assert code == 1 and "[FAIL]" in out


def test_max_q_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("BVLOOP_MAX_Q", "2")
    code, out, _ = run(capsys, "verify", "--space", "hp:2", "--suite", "bv", "--max-q", "5", "--format", "json")
    assert code == 0
    assert json.loads(out)["parameters"]["max_q"] == 2
    monkeypatch.setenv("BVLOOP_MAX_Q", "many")
    assert main(["verify", "--space", "hp:2", "--suite", "bv"]) == 2


def test_seed_is_recorded(capsys):
    code, out, _ = run(capsys, "verify", "--space", "hp:2", "--suite", "bv", "--seed", "7", "--format", "json")
    assert code == 0 and json.loads(out)["parameters"]["seed"] == 7


@pytest.mark.parametrize("space,needle", [
    ("hp:3", "ν = (3λ,2λ,λ,0); λ=1; ρ₁=7; Δ table matches Theorem"),
    ("hp:2", "ρ₁=5"),
    ("op2", "c(p,q) = 2 + 3q - p"),
])
def test_derive(capsys, space, needle):
    code, out, _ = run(capsys, "derive", "--space", space)
    assert code == 0 and needle in out


def test_parse_degrees():
    assert parse_degrees("-8..12") == range(-8, 13)
    assert parse_degrees("4") == range(4, 5)
    with pytest.raises(ValueError):
        parse_degrees("3..1")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bvloop", "delta", "--space", "hp:2", "a*b*x"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "4·a*x"
