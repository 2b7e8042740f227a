import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctrlshift.errors import InputError
from ctrlshift.linalg import RegisterShape
from ctrlshift.serialize import (
    decode_complex,
    decode_matrix,
    decode_shape,
    decode_vector,
    encode_complex,
    encode_matrix,
    encode_vector,
    gate_from_json,
    parse_program,
    parse_qca,
    read_json,
)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(finite, finite)
def test_complex_round_trip(re, im):
    assert decode_complex(encode_complex(complex(re, im))) == complex(re, im)


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=6))
def test_vector_round_trip(pairs):
    v = np.array([complex(a, b) for a, b in pairs])
    assert np.array_equal(decode_vector(encode_vector(v)), v)


def test_matrix_round_trip_row_major():
    m = np.array([[1, 2j], [3, 4 - 1j]])
    rows = encode_matrix(m)
    assert rows[0][1] == [0.0, 2.0]
    assert np.array_equal(decode_matrix(rows), m)


@pytest.mark.parametrize("bad", ["1", [1, 2, 3], True, [1, "x"], None])
def test_decode_complex_rejects(bad):
    with pytest.raises(InputError):
        decode_complex(bad)


def test_decode_matrix_rejects_non_square():
    with pytest.raises(InputError):
        decode_matrix([[[1, 0], [0, 0]]])
    with pytest.raises(InputError):
        decode_matrix([])


def test_decode_shape():
    assert decode_shape([3, 2]) == RegisterShape((3, 2))
    for bad in ([0], "2", [2.5], []):
        with pytest.raises(InputError):
            decode_shape(bad)


def test_gate_kinds():
    shape = RegisterShape((2,))
    assert np.allclose(gate_from_json({"kind": "pauli_exp", "axes": [1], "phi": math.pi / 2}, shape).matrix,
                       [[0, 1j], [1j, 0]], atol=1e-15)
    assert np.array_equal(gate_from_json({"kind": "named", "name": "identity"}, shape).matrix, np.eye(2))
    two = RegisterShape((2, 2))
    assert np.array_equal(gate_from_json({"kind": "named", "name": "cnot12"}, two).matrix,
                          np.eye(4)[[0, 1, 3, 2]])
    m = gate_from_json({"kind": "matrix", "rows": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}, shape)
    assert np.array_equal(m.matrix, [[0, 1], [1, 0]])


@pytest.mark.parametrize(
    "entry",
    [
        {"kind": "mystery"},
        {"axes": [1]},
        {"kind": "pauli_exp", "axes": [1]},
        {"kind": "pauli_exp", "axes": [7], "phi": 0.1},
        {"kind": "named", "name": "toffoli"},
        {"kind": "named", "name": "cnot12"},
        "identity",
    ],
)
def test_gate_rejects(entry):
    with pytest.raises(InputError):
        gate_from_json(entry, RegisterShape((2,)))


def program_doc(**over):
    doc = {
        "data_shape": [2],
        "gate_set": [
            {"kind": "named", "name": "identity"},
            {"kind": "matrix", "rows": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]},
            {"kind": "matrix", "rows": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]},
        ],
        "program": [1, 2],
    }
    doc.update(over)
    return doc


def test_parse_program():
    pf = parse_program(program_doc())
    assert pf.program.steps == (1, 2)
    assert pf.config.m == 3 and pf.config.length == 2
    assert np.array_equal(pf.initial.amps, [1, 0])
    pf = parse_program(program_doc(initial_state=[[0, 0], [0, 1]]))
    assert np.array_equal(pf.initial.amps, [0, 1j])


@pytest.mark.parametrize(
    "over",
    [
        {"program": []},
        {"program": [3]},
        {"program": [1.5]},
        {"program": "12"},
        {"initial_state": [[1, 0], [1, 0]]},
        {"gate_set": []},
        {"gate_set": [{"kind": "named", "name": "hadamard"}]},
        {"gate_set": [{"kind": "named", "name": "identity"}, {"kind": "matrix", "rows": [[[2, 0], [0, 0]], [[0, 0], [1, 0]]]}]},
        {"data_shape": [0]},
    ],
)
def test_parse_program_rejects(over):
    with pytest.raises(InputError):
        parse_program(program_doc(**over))


def test_parse_program_missing_key():
    doc = program_doc()
    del doc["program"]
    with pytest.raises(InputError):
        parse_program(doc)
    with pytest.raises(InputError):
        parse_program([1, 2])


def qca_doc(**over):
    doc = {
        "data_qubits": 2,
        "perimeter": 4,
        "lines": [
            {"kind": "one", "slots": [1, 0, 0, 0]},
            {"kind": "two", "slots": [0, 1, 0, 0]},
            {"kind": "one", "slots": [0, 0, 2, 0]},
        ],
        "sequence": "U_IV",
        "dtau": 1.0,
    }
    doc.update(over)
    return doc


def test_parse_qca():
    cfg = parse_qca(qca_doc())
    assert cfg.lattice.perimeter == 4 and cfg.repetitions == 2 and cfg.sequence == "U_IV"
    assert parse_qca(qca_doc(repetitions=5)).repetitions == 5


@pytest.mark.parametrize(
    "over",
    [
        {"perimeter": 3},
        {"perimeter": 6},
        {"data_qubits": 0},
        {"sequence": "U_V"},
        {"dtau": "fast"},
        {"repetitions": 0},
        {"lines": [{"kind": "one", "slots": [3, 0, 0, 0]}]},
        {"lines": [{"kind": "one"}]},
        {"initial_state": [[1, 0]]},
    ],
)
def test_parse_qca_rejects(over):
    with pytest.raises(InputError):
        parse_qca(qca_doc(**over))


def test_read_json(tmp_path):
    with pytest.raises(InputError):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        read_json(bad)
