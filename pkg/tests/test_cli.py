import json
import math
import subprocess
import sys

import numpy as np
import pytest

from ctrlshift.cli import main

XZ_PROGRAM = {
    "data_shape": [2],
    "gate_set": [
        {"kind": "named", "name": "identity"},
        {"kind": "pauli_exp", "axes": [1], "phi": math.pi / 2},
        {"kind": "matrix", "rows": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]},
    ],
    "program": [1, 2],
}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def amps(doc):
    return np.array([complex(*z) for z in doc["final_state"]])


def test_run_two_gates(tmp_path, capsys):
    # sigma_x as a plain matrix, then sigma_z: |0> -> -|1>
    doc = dict(XZ_PROGRAM)
    doc["gate_set"] = doc["gate_set"][:1] + [
        {"kind": "matrix", "rows": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]},
        doc["gate_set"][2],
    ]
    assert main(["run", write(tmp_path, "p.json", doc)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["program_restored"] is True
    assert np.allclose(amps(out), [0, -1], atol=1e-15)


def test_run_zero_program(tmp_path, capsys):
    doc = dict(XZ_PROGRAM, program=[0, 0, 0], initial_state=[[0.6, 0], [0, 0.8]])
    assert main(["run", write(tmp_path, "p.json", doc)]) == 0
    assert np.allclose(amps(json.loads(capsys.readouterr().out)), [0.6, 0.8j], atol=0)


def test_run_out_file(tmp_path, capsys):
    out = tmp_path / "out.json"
    assert main(["run", write(tmp_path, "p.json", XZ_PROGRAM), "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert "final_state" in json.loads(out.read_text())


def test_run_input_errors(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.json")]) == 2
    assert main(["run", write(tmp_path, "p.json", dict(XZ_PROGRAM, program=[9]))]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[")
    assert main(["run", str(bad)]) == 2
    assert "input error" in capsys.readouterr().err


def test_run_over_capacity(tmp_path, monkeypatch):
    monkeypatch.setenv("CTRLSHIFT_MAX_DIM", "1")
    # the register described by the file is rejected while loading
    assert main(["run", write(tmp_path, "p.json", XZ_PROGRAM)]) == 2


def test_verify_gates(capsys):
    assert main(["verify", "--suite", "gates"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert records and all(r["pass"] for r in records)
    assert set(records[0]) == {"check", "params", "metric", "tol", "pass"}
    names = [r["check"] for r in records]
    assert names == sorted(names)


def test_verify_theorems_count(capsys):
    assert main(["verify", "--suite", "theorems"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len({r["check"] for r in records}) >= 10


def test_verify_tight_tol_fails(capsys):
    assert main(["verify", "--suite", "gates", "--tol", "1e-30"]) == 1


def test_verify_deterministic(capsys):
    main(["verify", "--suite", "processor", "--seed", "3"])
    first = capsys.readouterr().out
    main(["verify", "--suite", "processor", "--seed", "3"])
    assert capsys.readouterr().out == first


def test_bad_arguments():
    for argv in (["verify", "--suite", "nope"], ["verify", "--tol", "-1"], ["approx"], ["frobnicate"], []):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2


def test_approx(capsys):
    assert main(["approx", "--theta", "1.0", "--dtau", "1.0"]) == 0
    assert json.loads(capsys.readouterr().out) == {"m": 1, "error": 0.0, "found": True}
    args = ["approx", "--theta", "0.3", "--dtau", str(math.pi / 2), "--eps", "1e-6", "--max-steps", "10000"]
    assert main(args) == 0
    assert json.loads(capsys.readouterr().out)["found"] is False


def test_qca_zero_program(tmp_path, capsys):
    doc = {
        "data_qubits": 2,
        "perimeter": 4,
        "lines": [{"kind": "one", "slots": [0] * 4}, {"kind": "two", "slots": [0] * 4}, {"kind": "one", "slots": [0] * 4}],
        "initial_state": [[0, 0], [1, 0], [0, 0], [0, 0]],
    }
    assert main(["qca", write(tmp_path, "q.json", doc)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert np.array_equal(amps(out), [0, 1, 0, 0])
    assert out["lines_restored"] is True


def test_qca_arrangement_error(tmp_path):
    doc = {
        "data_qubits": 1,
        "perimeter": 2,
        "lines": [{"kind": "one", "slots": [0, 1]}],
    }
    assert main(["qca", write(tmp_path, "q.json", doc)]) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ctrlshift", "approx", "--theta", "1.0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["m"] == 1
