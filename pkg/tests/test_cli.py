import json

import pytest

from epspace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_schreier(capsys):
    assert run(capsys, "schreier", "member", "--alpha", "1", "--set", "2,3") == (0, "true\n", "")
    assert run(capsys, "schreier", "member", "--alpha", "1", "--set", "1,2")[1] == "false\n"
    code, out, _ = run(capsys, "schreier", "enum", "--alpha", "1", "--max-n", "3")
    assert code == 0 and out.split("\n")[0] == "{}"


def test_norm(capsys):
    code, out, _ = run(capsys, "norm", "--vec", "3:1,6:1")
    assert code == 0 and out.splitlines()[0] == "value = 2"
    code, out, _ = run(capsys, "norm", "--vec", "2:1,4:1", "--engine", "exhaustive", "--json")
    d = json.loads(out)
    assert d["value"] == "1" and d["witness"] == {"unit": 2}


def test_dualnorm(capsys):
    code, out, _ = run(capsys, "dualnorm", "--func", "2:1/2,3:1/2")
    assert code == 0 and out.splitlines()[0] == "value = 1"
    code, out, _ = run(capsys, "dualnorm", "--func", "2:1,3:1", "--json")
    d = json.loads(out)
    assert d["value"] == "2" and d["witness_point"] == "2:1,3:1"


def test_extreme(capsys):
    code, out, _ = run(capsys, "extreme", "--coords", "2,3")
    assert code == 0 and out.splitlines()[0] == "count = 4"


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--config", "W", "--set", "1,2,3,4,5,6", "--alpha", "1", "--json")
    d = json.loads(out)
    assert code == 0 and all(d["checks"].values())
    code, _, err = run(capsys, "witness", "--set", "1,2,3", "--strict")
    assert code == 1 and "precondition" in err


def test_check(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "--suite", "L1", "--count", "20", "--seed", "3", "--json", str(path))
    assert code == 0 and "L1: pass (20 instances" in out
    assert json.loads(path.read_text())["seed"] == 3
    code, _, err = run(capsys, "check", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", "--config", "G")[:2] == (0, "ok\n")
    bad = tmp_path / "bad.txt"
    bad.write_text("p = 2\nblocks = [2-3, 3-4]\n")
    code, out, _ = run(capsys, "validate", "--config", str(bad))
    assert code == 1 and "successive" in out


def test_errors(capsys):
    assert run(capsys, "norm", "--vec", "40:1")[0] == 2
    assert run(capsys, "norm", "--config", "/no/such/file", "--vec", "2:1")[0] == 2
    with pytest.raises(SystemExit):
        main(["norm"])
