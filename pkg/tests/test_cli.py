import json
import subprocess
import sys

import pytest

SPEC_A2 = {
    "field": {"prime": 2},
    "vertices": ["1", "2"],
    "arrows": [{"name": "a", "from": "1", "to": "2"}],
    "relations": [],
    "nilpotency_bound": 3,
}

SPEC_KX2 = {
    "field": {"prime": 2},
    "vertices": ["1"],
    "arrows": [{"name": "x", "from": "1", "to": "1"}],
    "relations": [[{"coeff": "1", "path": ["x", "x"]}]],
    "nilpotency_bound": 3,
}


def write_spec(tmp_path, data, name="alg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "cosilt.cli", *args],
        capture_output=True, text=True,
    )


def test_lattice_command_a2(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    dot = tmp_path / "out.dot"
    js = tmp_path / "lattice.json"
    res = run_cli("lattice", "--algebra", spec, "--dot", str(dot), "--json", str(js))
    assert res.returncode == 0
    assert "pairs: 5, cmi: 3" in res.stdout
    data = json.loads(js.read_text())
    assert len(data["pairs"]) == 5
    text = dot.read_text()
    assert text.startswith("digraph") and text.count("->") == 5


def test_lattice_command_kx2(tmp_path):
    spec = write_spec(tmp_path, SPEC_KX2)
    res = run_cli("lattice", "--algebra", spec)
    assert res.returncode == 0
    assert "pairs: 2, cmi: 1" in res.stdout


def test_pairs_command(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    res = run_cli("pairs", "--algebra", spec)
    assert res.returncode == 0
    assert "all 5 cosilting pairs verified" in res.stdout


def test_catalog_command(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    js = tmp_path / "cat.json"
    res = run_cli("catalog", "--algebra", spec, "--json", str(js))
    assert res.returncode == 0
    assert "members: 3" in res.stdout
    data = json.loads(js.read_text())
    assert len(data["members"]) == 3


def test_reject_command(tmp_path):
    spec = write_spec(tmp_path, SPEC_KX2)
    res = run_cli("reject", "--algebra", spec)
    assert res.returncode == 0
    assert "0 -> 1 -> 2 -> 1 -> 0" in res.stdout


def test_verify_command_exit_zero(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    res = run_cli("verify", "--algebra", spec, "--check", "theorem-a")
    assert res.returncode == 0
    assert "ok" in res.stdout and "FAIL" not in res.stdout


def test_verify_unknown_check(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    res = run_cli("verify", "--algebra", spec, "--check", "nonsense")
    assert res.returncode == 2


def test_malformed_spec_exit_two(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{ not json")
    res = run_cli("lattice", "--algebra", str(p))
    assert res.returncode == 2
    assert "input error" in res.stderr


def test_missing_file_exit_two(tmp_path):
    res = run_cli("lattice", "--algebra", str(tmp_path / "nope.json"))
    assert res.returncode == 2


def test_budget_exit_three(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    res = run_cli("lattice", "--algebra", spec, "--budget-subsets", "2")
    assert res.returncode == 3
    assert "budget" in res.stderr


def test_incomplete_catalog_refused(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"dims": {"1": 1}, "action": {}}))
    res = run_cli("lattice", "--algebra", spec, "--family", "explicit",
                  "--module", str(mod))
    assert res.returncode == 2
    assert "complete" in res.stderr


def test_deterministic_outputs(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    outs = []
    for k in (1, 2):
        js = tmp_path / f"report{k}.json"
        res = run_cli("verify", "--algebra", spec, "--check", "all",
                      "--seed", "7", "--json", str(js))
        assert res.returncode == 0
        outs.append((res.stdout, js.read_bytes()))
    assert outs[0] == outs[1]


def test_dot_deterministic(tmp_path):
    spec = write_spec(tmp_path, SPEC_A2)
    blobs = []
    for k in (1, 2):
        dot = tmp_path / f"out{k}.dot"
        res = run_cli("lattice", "--algebra", spec, "--dot", str(dot))
        assert res.returncode == 0
        blobs.append(dot.read_bytes())
    assert blobs[0] == blobs[1]
