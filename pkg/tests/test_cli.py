import json
import subprocess
import sys
from pathlib import Path

import pytest

from catgrp.cli import main
from catgrp.dsl import parse_spec

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_valid(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "a3_s3.cg")
    assert code == 0
    assert "FAIL" not in out


def test_check_trivial_action(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "a3_s3_trivial_action.cg")
    assert code == 1
    assert "equivariance" in out and "witness=[1, 1]" in out


def test_check_syntax_error(capsys):
    code, _, err = run(capsys, "check", FIXTURES / "syntax_error.cg")
    assert code == 2
    assert "syntax_error.cg:4:1: error: row length 3, expected 4" in err


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check", FIXTURES / "a3_s3.cg", "--bogus")[0] == 2
    assert run(capsys, "check", FIXTURES / "missing.cg")[0] == 2
    assert run(capsys, "roundtrip", FIXTURES / "a3_s3.cg", "nope")[0] == 2
    assert run(capsys, "roundtrip", FIXTURES / "a3_s3.cg", "S3")[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_json_shape_and_stability(capsys):
    _, first, _ = run(capsys, "check", FIXTURES / "a3_s3_trivial_action.cg", "--json")
    _, second, _ = run(capsys, "check", FIXTURES / "a3_s3_trivial_action.cg", "--json")
    assert first == second
    payload = json.loads(first)
    assert payload["version"] == 1
    targets = [r["target"] for r in payload["results"]]
    assert targets == ["S3", "A3", "incl", "act", "act", "X"]
    for r in payload["results"]:
        assert set(r) == {"target", "check", "passed", "witness", "detail"}
        assert r["witness"] is None or all(isinstance(x, int) for x in r["witness"])
    last = payload["results"][-1]
    assert last["passed"] is False and last["witness"] == [1, 1]


def test_roundtrip_trivial(capsys):
    code, out, _ = run(capsys, "roundtrip", FIXTURES / "trivial_xmod.cg", "X", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["iso"] == {"alpha": [0], "beta": [0]}


def test_roundtrip_contract_error(capsys):
    code, _, err = run(capsys, "roundtrip", FIXTURES / "a3_s3_trivial_action.cg", "X")
    assert code == 1
    assert "witness" in err


def test_construct_both_ways(capsys, tmp_path):
    out = tmp_path / "int.cg"
    assert run(capsys, "construct", "xmod-to-internal", FIXTURES / "a3_s3.cg", "X", "-o", out)[0] == 0
    assert out.read_text() == (FIXTURES / "a3_s3_internal.cg").read_text()
    code, text, _ = run(capsys, "construct", "internal-to-xmod", out, "X_int")
    assert code == 0
    doc = parse_spec(text)
    assert doc.names() == ["X_int_C", "X_int_G", "X_int_boundary", "X_int_action", "X_int_xm"]
    back = tmp_path / "back.cg"
    back.write_text(text)
    assert run(capsys, "check", back)[0] == 0
    assert run(capsys, "check", out)[0] == 0
    assert run(capsys, "roundtrip", out, "X_int")[0] == 0


def test_construct_wrong_kind(capsys):
    assert run(capsys, "construct", "internal-to-xmod", FIXTURES / "a3_s3.cg", "X")[0] == 2


def test_builtin(capsys):
    code, out, _ = run(capsys, "builtin", "dihedral", 3)
    assert code == 0
    assert parse_spec(out).get("D3").obj.order == 6
    assert run(capsys, "builtin", "cyclic")[0] == 2
    code, out, _ = run(capsys, "builtin", "quaternion8")
    assert code == 0 and out.startswith("group Q8 order 8\n")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "catgrp", "check", str(FIXTURES / "a3_s3_trivial_action.cg")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "FAIL" in proc.stdout
