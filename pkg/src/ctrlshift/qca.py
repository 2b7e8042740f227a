"""Cylindrical quantum cellular automaton realizing the Control-Shift network.

Layout: ``d`` data qubits in a row.  Program lines alternate
``one, two, one, ..., one``: line ``2q`` holds qutrit indices (0, 1, 2) that
control data qubit ``q``; line ``2q + 1`` holds bit indices controlling the
pair ``(q, q + 1)``.  Every line is cyclic with perimeter ``2L``; the slot at
``read_slot`` faces the data register.

Local steps:

* ``S1`` swaps slots ``(2j, 2j+1)`` and ``S2`` swaps ``(2j+1, 2j+2)``
  cyclically (0-based), so even-slot contents drift one way and odd-slot
  contents the other.
* ``C1`` evolves the data by ``exp(i dtau sum h)`` over the one-qubit terms
  selected by the one-lines (index 1 -> sigma_x, 2 -> sigma_z).
* ``C2`` does the same with ``sigma_z sigma_z`` on each pair whose two-line
  reads 1.

Program lines are classical index tuples; only the data register is quantum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import ArrangementError, ContractError
from .gates import (
    GateSet,
    PauliString,
    control_block,
    decompose_controlled_diag,
    pauli_string,
    qutrit_control_projector_form,
)
from .linalg import (
    IDENTITY_TOL,
    Operator,
    RegisterShape,
    StateVector,
    apply,
    embed,
    expi_hermitian,
)
from .processor import Program, ProcessorConfig, run

ONE, TWO = "one", "two"
RADIX = {ONE: 3, TWO: 2}

WORDS = {
    # right-to-left as written, so S2 acts first
    "U_IV": ("S2", "C2", "S1", "C1"),
    "U_VI": ("S2", "C2", "C1", "S1", "C2", "C1"),
}


@dataclass(frozen=True)
class Line:
    kind: str
    slots: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in RADIX:
            raise ContractError(f"line kind must be 'one' or 'two', got {self.kind!r}")
        slots = tuple(int(v) for v in self.slots)
        if any(not 0 <= v < RADIX[self.kind] for v in slots):
            raise ContractError(f"{self.kind}-line index out of range in {slots}")
        object.__setattr__(self, "slots", slots)


@dataclass(frozen=True)
class Lattice:
    lines: tuple[Line, ...]
    data: StateVector

    def __post_init__(self):
        lines = tuple(self.lines)
        object.__setattr__(self, "lines", lines)
        if set(self.data.shape.site_dims) != {2}:
            raise ContractError("data register must be qubits")
        d = self.data.shape.n_sites
        if len(lines) != 2 * d - 1:
            raise ContractError(f"{d} data qubits need {2 * d - 1} lines, got {len(lines)}")
        for i, line in enumerate(lines):
            expected = ONE if i % 2 == 0 else TWO
            if line.kind != expected:
                raise ContractError(f"line {i} must be a {expected}-line")
        perims = {len(line.slots) for line in lines}
        if len(perims) != 1:
            raise ContractError(f"lines have different perimeters {sorted(perims)}")
        p = perims.pop()
        if p < 2 or p % 2:
            raise ContractError(f"perimeter must be even and >= 2, got {p}")

    @property
    def data_qubits(self) -> int:
        return self.data.shape.n_sites

    @property
    def perimeter(self) -> int:
        return len(self.lines[0].slots)

    @property
    def read_slot(self) -> int:
        # chosen so that interleave_zeros output is read in program order
        return self.perimeter - 2

    def line_contents(self) -> tuple[tuple[int, ...], ...]:
        return tuple(line.slots for line in self.lines)

    def with_data(self, data: StateVector) -> Lattice:
        return replace(self, data=data)


def interleave_zeros(prog: Program | Sequence[int]) -> tuple[int, ...]:
    """(k_1, 0, k_2, 0, ..., k_L, 0)."""
    steps = prog.steps if isinstance(prog, Program) else tuple(prog)
    out = []
    for k in steps:
        out += [int(k), 0]
    return tuple(out)


def check_checkerboard(lat: Lattice) -> None:
    """One-lines may be nonzero only at even slots, two-lines only at odd slots."""
    for i, line in enumerate(lat.lines):
        bad_parity = 1 if line.kind == ONE else 0
        if any(v for v in line.slots[bad_parity::2]):
            raise ArrangementError(f"line {i} ({line.kind}) breaks the checkerboard arrangement")


def _shift_slots(slots: tuple[int, ...], parity: str) -> tuple[int, ...]:
    p = len(slots)
    out = list(slots)
    start = 0 if parity == "odd" else 1
    for a in range(start, p, 2):
        b = (a + 1) % p
        out[a], out[b] = slots[b], slots[a]
    return tuple(out)


def partition_shift(lat: Lattice, parity: str) -> Lattice:
    """S1 (``parity='odd'``) or S2 (``parity='even'``) on every line.

    Parities are named after the 1-based slot that opens each swapped pair.
    """
    if parity not in ("odd", "even"):
        raise ContractError(f"parity must be 'odd' or 'even', got {parity!r}")
    lines = tuple(Line(line.kind, _shift_slots(line.slots, parity)) for line in lat.lines)
    return Lattice(lines, lat.data)


def layer_terms(lat: Lattice, which: str) -> list[PauliString]:
    """Pauli strings switched on by the slots facing the data register."""
    d = lat.data_qubits
    r = lat.read_slot
    terms = []
    if which == "C1":
        for q, line in enumerate(lat.lines[0::2]):
            v = line.slots[r]
            if v:
                terms.append(PauliString.single(d, q, 1 if v == 1 else 3))
    elif which == "C2":
        for q, line in enumerate(lat.lines[1::2]):
            if line.slots[r]:
                idx = [0] * d
                idx[q] = idx[q + 1] = 3
                terms.append(PauliString(tuple(idx)))
    else:
        raise ContractError(f"layer must be 'C1' or 'C2', got {which!r}")
    return terms


def layer_hamiltonian(lat: Lattice, which: str) -> Operator:
    terms = layer_terms(lat, which)
    for a, b in itertools.combinations(terms, 2):
        if not a.commutes_with(b):
            raise ArrangementError(f"non-commuting terms {a.indices} and {b.indices} in {which}")
    shape = lat.data.shape
    h = np.zeros((shape.total_dim, shape.total_dim), dtype=complex)
    for t in terms:
        h += pauli_string(t).matrix
    return Operator(h, shape)


def layer_operator(lat: Lattice, which: str, dtau: float) -> Operator:
    return expi_hermitian(layer_hamiltonian(lat, which), dtau)


def control_layer(lat: Lattice, which: str, dtau: float) -> Lattice:
    return lat.with_data(apply(layer_operator(lat, which, dtau), lat.data))


def global_vs_local_check(local_hams: Sequence[Operator], dtau: float) -> float:
    """||exp(i dtau sum h) - prod exp(i dtau h)||_F."""
    if not local_hams:
        raise ContractError("no Hamiltonians given")
    shape = local_hams[0].shape
    if any(h.shape != shape for h in local_hams):
        raise ContractError("Hamiltonians have different shapes")
    total = Operator(sum(h.matrix for h in local_hams), shape)
    glob = expi_hermitian(total, dtau).matrix
    prod = np.eye(shape.total_dim, dtype=complex)
    for h in local_hams:
        prod = prod @ expi_hermitian(h, dtau).matrix
    return float(np.linalg.norm(glob - prod))


def evolve(lat: Lattice, sequence: str, repetitions: int, dtau: float = 1.0) -> Lattice:
    """Apply the word ``sequence`` ``repetitions`` times.

    For ``U_IV`` the lattice must be in checkerboard arrangement, and at every
    control half-step the layer not applied is checked to be inactive.
    """
    if sequence not in WORDS:
        raise ContractError(f"sequence must be one of {sorted(WORDS)}, got {sequence!r}")
    if repetitions < 1:
        raise ContractError(f"repetitions must be >= 1, got {repetitions}")
    checker = sequence == "U_IV"
    if checker:
        check_checkerboard(lat)
    for _ in range(repetitions):
        for op in WORDS[sequence]:
            if op == "S1":
                lat = partition_shift(lat, "odd")
            elif op == "S2":
                lat = partition_shift(lat, "even")
            else:
                if checker:
                    idle = "C1" if op == "C2" else "C2"
                    if layer_terms(lat, idle):
                        raise ArrangementError(f"{idle} active during the {op} half-step")
                lat = control_layer(lat, op, dtau)
    return lat


def evolve_registers(
    lat: Lattice, registers: Sequence[StateVector], sequence: str, repetitions: int, dtau: float = 1.0
) -> list[StateVector]:
    """Run independent data registers under the same program lines."""
    return [evolve(lat.with_data(s), sequence, repetitions, dtau).data for s in registers]


# --- program encoding -------------------------------------------------------


@dataclass(frozen=True)
class Column:
    """Indices presented to the data register at one half-step."""

    one: tuple[int, ...]
    two: tuple[int, ...]

    @classmethod
    def zeros(cls, d: int) -> Column:
        return cls((0,) * d, (0,) * (d - 1))


@dataclass(frozen=True)
class Instruction:
    """What one repetition of the word reads: a column per half-step."""

    first: Column
    second: Column

    @classmethod
    def checkerboard(cls, one: Sequence[int], two: Sequence[int]) -> Instruction:
        """U_IV instruction: two-qubit column at the first half, one-qubit at the second."""
        one, two = tuple(one), tuple(two)
        return cls(Column((0,) * len(one), two), Column(one, (0,) * len(two)))

    @classmethod
    def idle(cls, d: int) -> Instruction:
        return cls(Column.zeros(d), Column.zeros(d))

    @property
    def halves(self) -> tuple[Column, Column]:
        return (self.first, self.second)


def read_schedule(perimeter: int, sequence: str, repetitions: int) -> list[int]:
    """Original slot facing the data register at each half-step, in time order."""
    if sequence not in WORDS:
        raise ContractError(f"unknown sequence {sequence!r}")
    origin = tuple(range(perimeter))
    read = perimeter - 2
    out = []
    for _ in range(repetitions):
        for op in WORDS[sequence]:
            if op == "S1":
                origin = _shift_slots(origin, "odd")
                out.append(origin[read])
            elif op == "S2":
                origin = _shift_slots(origin, "even")
                out.append(origin[read])
    return out


def encode_program(
    table: Sequence[Instruction],
    prog: Program,
    data: StateVector,
    sequence: str = "U_IV",
) -> Lattice:
    """Lay a program of instruction indices onto cyclic lines of perimeter 2L."""
    d = data.shape.n_sites
    length = len(prog)
    perimeter = 2 * length
    for i, ins in enumerate(table):
        for col in ins.halves:
            if len(col.one) != d or len(col.two) != d - 1:
                raise ContractError(f"instruction {i} does not fit {d} data qubits")
    if max(prog.steps) >= len(table):
        raise ContractError("program indexes past the instruction table")
    schedule = read_schedule(perimeter, sequence, length)
    if sorted(schedule) != list(range(perimeter)):
        raise AssertionError("read schedule does not visit every slot once")
    one = [[0] * perimeter for _ in range(d)]
    two = [[0] * perimeter for _ in range(d - 1)]
    for t, slot in enumerate(schedule):
        col = table[prog.steps[t // 2]].halves[t % 2]
        for q in range(d):
            one[q][slot] = col.one[q]
        for q in range(d - 1):
            two[q][slot] = col.two[q]
    lines = []
    for q in range(d):
        lines.append(Line(ONE, tuple(one[q])))
        if q < d - 1:
            lines.append(Line(TWO, tuple(two[q])))
    return Lattice(tuple(lines), data)


def _one_qubit_gate(v: int, dtau: float) -> Operator:
    block = control_block(qutrit_control_projector_form(), v)
    return expi_hermitian(block, dtau)


def _two_qubit_gate(dtau: float) -> Operator:
    factors = decompose_controlled_diag(dtau, centered=True)
    u = factors[0].matrix @ factors[1].matrix @ factors[2].matrix @ factors[3].matrix
    # keep the control (middle) qubit in |1>
    block = u.reshape(2, 2, 2, 2, 2, 2)[:, 1, :, :, 1, :].reshape(4, 4)
    return Operator(block, (2, 2))


def instruction_gate(ins: Instruction, d: int, dtau: float) -> Operator:
    """Data unitary of one repetition, built from local control blocks.

    Each active local term is exponentiated on its own (qutrit blocks of the
    projector-form Hamiltonian, the four-factor two-qubit decomposition
    restricted to control |1>) and the commuting pieces are multiplied.
    """
    shape = RegisterShape.qubits(d)
    out = np.eye(shape.total_dim, dtype=complex)
    for col in ins.halves:
        for q, v in enumerate(col.two):
            if v:
                out = embed(_two_qubit_gate(dtau), [q, q + 1], shape).matrix @ out
        for q, v in enumerate(col.one):
            if v:
                out = embed(_one_qubit_gate(v, dtau), [q], shape).matrix @ out
    return Operator(out, shape)


def instruction_gate_set(table: Sequence[Instruction], d: int, dtau: float) -> GateSet:
    if table[0] != Instruction.idle(d):
        raise ContractError("instruction 0 must be idle (all indices zero)")
    return GateSet(tuple(instruction_gate(ins, d, dtau) for ins in table))


def cross_check_processor(
    lat: Lattice,
    cfg: ProcessorConfig,
    prog: Program,
    table: Sequence[Instruction],
    dtau: float = 1.0,
    sequence: str = "U_IV",
) -> float:
    """Distance between the QCA's final data and the processor's ``run`` output."""
    expected = encode_program(table, prog, lat.data, sequence)
    if expected.line_contents() != lat.line_contents():
        raise ContractError("lattice lines do not encode the program")
    if len(cfg.gate_set) != len(table) or cfg.length != len(prog):
        raise ContractError("processor config does not match the instruction table")
    d = lat.data_qubits
    for k, ins in enumerate(table):
        ref = instruction_gate(ins, d, dtau)
        if np.linalg.norm(ref.matrix - cfg.gate_set[k].matrix) > IDENTITY_TOL:
            raise ContractError(f"gate {k} is not the instruction's control unitary")
    qca_out = evolve(lat, sequence, len(prog), dtau).data
    proc_out = run(prog, cfg, lat.data)
    return float(np.linalg.norm(qca_out.amps - proc_out.amps))
