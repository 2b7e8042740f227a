"""Simulation and checks for Control-Shift programmable quantum processors."""

from .errors import ArrangementError, CapacityError, ContractError, InputError, StructureError
from .gates import GateSet, PauliString, conditional, pauli, pauli_exp, pauli_string
from .linalg import Operator, RegisterShape, StateVector, expi_hermitian, tensor
from .processor import Program, ProcessorConfig, approximate_angle, run
from .qca import Instruction, Lattice, Line, encode_program, evolve

__all__ = [
    "ArrangementError",
    "CapacityError",
    "ContractError",
    "GateSet",
    "InputError",
    "Instruction",
    "Lattice",
    "Line",
    "Operator",
    "PauliString",
    "ProcessorConfig",
    "Program",
    "RegisterShape",
    "StateVector",
    "StructureError",
    "approximate_angle",
    "conditional",
    "encode_program",
    "evolve",
    "expi_hermitian",
    "pauli",
    "pauli_exp",
    "pauli_string",
    "run",
    "tensor",
]
