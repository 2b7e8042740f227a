"""JSON encodings for states, matrices, gate sets, program files and QCA configs.

Complex numbers are ``[re, im]`` pairs, matrices are row-major nested
lists, shapes are lists of site dimensions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ContractError, InputError
from .gates import GateSet, named_gate, pauli_exp
from .linalg import Operator, RegisterShape, StateVector
from .processor import Program, ProcessorConfig
from .qca import WORDS, Lattice, Line


def encode_complex(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(x: Any) -> complex:
    if isinstance(x, bool):
        raise InputError(f"not a complex number: {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        return complex(x[0], x[1])
    raise InputError(f"complex numbers are [re, im] pairs, got {x!r}")


def encode_vector(v) -> list[list[float]]:
    return [encode_complex(z) for z in np.ravel(v)]


def decode_vector(items: Any) -> np.ndarray:
    if not isinstance(items, list):
        raise InputError("amplitudes must be a list")
    return np.array([decode_complex(x) for x in items], dtype=complex)


def encode_matrix(m) -> list[list[list[float]]]:
    return [encode_vector(row) for row in np.asarray(m)]


def decode_matrix(rows: Any) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise InputError("matrix rows must be a non-empty list")
    mat = [decode_vector(r) for r in rows]
    if any(len(r) != len(mat) for r in mat):
        raise InputError("matrix must be square")
    return np.array(mat)


def encode_shape(shape: RegisterShape) -> list[int]:
    return list(shape.site_dims)


def decode_shape(items: Any) -> RegisterShape:
    if not isinstance(items, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in items):
        raise InputError(f"shape must be a list of integers, got {items!r}")
    try:
        return RegisterShape(tuple(items))
    except ContractError as exc:
        raise InputError(str(exc)) from exc


def gate_from_json(entry: Any, data_shape: RegisterShape) -> Operator:
    if not isinstance(entry, dict) or "kind" not in entry:
        raise InputError(f"gate entry needs a 'kind', got {entry!r}")
    kind = entry["kind"]
    try:
        if kind == "pauli_exp":
            op = pauli_exp(tuple(entry["axes"]), float(entry["phi"]))
        elif kind == "named":
            name = entry["name"]
            op = Operator.identity(data_shape) if name == "identity" else named_gate(name)
        elif kind == "matrix":
            op = Operator(decode_matrix(entry["rows"]), data_shape)
        else:
            raise InputError(f"unknown gate kind {kind!r}")
    except KeyError as exc:
        raise InputError(f"gate entry {entry!r} is missing {exc}") from None
    except (ContractError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad gate entry {entry!r}: {exc}") from exc
    if op.shape.total_dim != data_shape.total_dim:
        raise InputError(f"gate {entry!r} has dimension {op.dim}, data needs {data_shape.total_dim}")
    return Operator(op.matrix, data_shape)


def gate_set_from_json(entries: Any, data_shape: RegisterShape) -> GateSet:
    if not isinstance(entries, list) or not entries:
        raise InputError("gate_set must be a non-empty list")
    gates = tuple(gate_from_json(e, data_shape) for e in entries)
    try:
        return GateSet(gates)
    except ContractError as exc:
        raise InputError(str(exc)) from exc


def state_from_json(items: Any, shape: RegisterShape) -> StateVector:
    try:
        return StateVector(decode_vector(items), shape)
    except ContractError as exc:
        raise InputError(f"bad initial state: {exc}") from exc


@dataclass(frozen=True)
class ProgramFile:
    config: ProcessorConfig
    program: Program
    initial: StateVector


def parse_program(doc: Any) -> ProgramFile:
    if not isinstance(doc, dict):
        raise InputError("program file must be a JSON object")
    for key in ("data_shape", "gate_set", "program"):
        if key not in doc:
            raise InputError(f"program file is missing {key!r}")
    shape = decode_shape(doc["data_shape"])
    gs = gate_set_from_json(doc["gate_set"], shape)
    steps = doc["program"]
    if not isinstance(steps, list) or not all(isinstance(k, int) and not isinstance(k, bool) for k in steps):
        raise InputError("program must be a list of integers")
    try:
        prog = Program(tuple(steps))
    except ContractError as exc:
        raise InputError(str(exc)) from exc
    if max(prog.steps) >= len(gs):
        raise InputError(f"program index {max(prog.steps)} outside gate set of size {len(gs)}")
    if doc.get("initial_state") is None:
        initial = StateVector.basis(0, shape)
    else:
        initial = state_from_json(doc["initial_state"], shape)
    return ProgramFile(ProcessorConfig(gs, len(prog)), prog, initial)


@dataclass(frozen=True)
class QcaFile:
    lattice: Lattice
    sequence: str
    dtau: float
    repetitions: int


def parse_qca(doc: Any) -> QcaFile:
    if not isinstance(doc, dict):
        raise InputError("QCA config must be a JSON object")
    for key in ("data_qubits", "perimeter", "lines"):
        if key not in doc:
            raise InputError(f"QCA config is missing {key!r}")
    d, perimeter = doc["data_qubits"], doc["perimeter"]
    if not isinstance(d, int) or d < 1:
        raise InputError("data_qubits must be a positive integer")
    if not isinstance(perimeter, int) or perimeter < 2 or perimeter % 2:
        raise InputError("perimeter must be an even integer >= 2")
    sequence = doc.get("sequence", "U_IV")
    if sequence not in WORDS:
        raise InputError(f"sequence must be one of {sorted(WORDS)}")
    dtau = doc.get("dtau", 1.0)
    reps = doc.get("repetitions", perimeter // 2)
    if not isinstance(dtau, (int, float)) or not math.isfinite(dtau):
        raise InputError("dtau must be a finite number")
    if not isinstance(reps, int) or reps < 1:
        raise InputError("repetitions must be a positive integer")
    shape = RegisterShape.qubits(d)
    try:
        lines = []
        for entry in doc["lines"]:
            slots = entry["slots"]
            if len(slots) != perimeter:
                raise InputError(f"line has {len(slots)} slots, perimeter is {perimeter}")
            lines.append(Line(entry["kind"], tuple(slots)))
        if doc.get("initial_state") is None:
            data = StateVector.basis(0, shape)
        else:
            data = state_from_json(doc["initial_state"], shape)
        lattice = Lattice(tuple(lines), data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed line entry: {exc}") from None
    except ContractError as exc:
        raise InputError(str(exc)) from exc
    return QcaFile(lattice, sequence, float(dtau), reps)


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True)
