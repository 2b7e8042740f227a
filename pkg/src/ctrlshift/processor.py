"""The three-bus Control-Shift processor.

The program and control buses only ever carry orthogonal basis states, so
they are stored as a tuple of gate indices ``(k_L, ..., k_2, k_1)`` whose
last entry is the control slot.  ``conditional_full_operator`` builds the
fully quantum S*C unitary for cross-checking small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractError
from .gates import GateSet, pauli_exp
from .linalg import (
    Operator,
    RegisterShape,
    StateVector,
    apply,
)

DEFAULT_DTAU = 1.0
DEFAULT_MAX_STEPS = 10**6


@dataclass(frozen=True)
class Program:
    """Gate indices ``(k_1, ..., k_L)`` in execution order."""

    steps: tuple[int, ...]

    def __post_init__(self):
        steps = tuple(int(k) for k in self.steps)
        if not steps:
            raise ContractError("program needs at least one step")
        if any(k < 0 for k in steps):
            raise ContractError(f"negative gate index in {steps}")
        object.__setattr__(self, "steps", steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __add__(self, other: Program) -> Program:
        return Program(self.steps + other.steps)


@dataclass(frozen=True)
class ProcessorConfig:
    gate_set: GateSet
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ContractError(f"program length must be >= 1, got {self.length}")

    @property
    def data_shape(self) -> RegisterShape:
        return self.gate_set.data_shape

    @property
    def m(self) -> int:
        return len(self.gate_set)


@dataclass(frozen=True)
class JointState:
    """Program/control indices ``(k_L, ..., k_2, k_1)`` plus the data state."""

    program_control: tuple[int, ...]
    data: StateVector

    @classmethod
    def load(cls, prog: Program, data: StateVector) -> JointState:
        return cls(tuple(reversed(prog.steps)), data)

    @property
    def control(self) -> int:
        return self.program_control[-1]


def shift(js: JointState) -> JointState:
    """(k_L, ..., k_2 | k_1) -> (k_1, k_L, ..., k_3 | k_2)."""
    t = js.program_control
    return JointState(t[-1:] + t[:-1], js.data)


def control_step(js: JointState, cfg: ProcessorConfig) -> JointState:
    k = js.control
    if not 0 <= k < cfg.m:
        raise ContractError(f"control index {k} outside gate set of size {cfg.m}")
    return JointState(js.program_control, apply(cfg.gate_set[k], js.data))


def run(prog: Program, cfg: ProcessorConfig, data: StateVector) -> StateVector:
    """Apply (SC)^L, returning u_{k_L} ... u_{k_1} |data>."""
    final = run_joint(prog, cfg, data)
    return final.data


def run_joint(prog: Program, cfg: ProcessorConfig, data: StateVector) -> JointState:
    if len(prog) != cfg.length:
        raise ContractError(f"program length {len(prog)} != configured length {cfg.length}")
    if max(prog.steps) >= cfg.m:
        raise ContractError(f"program {prog.steps} indexes past gate set of size {cfg.m}")
    start = JointState.load(prog, data)
    js = start
    for _ in range(cfg.length):
        js = shift(control_step(js, cfg))
    if js.program_control != start.program_control:
        raise AssertionError("program bus not restored after L steps")
    return js


def shift_permutation(m: int, length: int) -> np.ndarray:
    """Permutation matrix of the cyclic shift on ``length`` sites of radix m."""
    dim = m**length
    perm = np.zeros((dim, dim))
    for idx in range(dim):
        digits = np.unravel_index(idx, (m,) * length)
        shifted = digits[-1:] + digits[:-1]
        perm[np.ravel_multi_index(shifted, (m,) * length), idx] = 1
    return perm


def conditional_full_operator(cfg: ProcessorConfig) -> Operator:
    """S*C on program (x) control (x) data, all L program sites of radix m."""
    m, length = cfg.m, cfg.length
    data_shape = cfg.data_shape
    shape = RegisterShape((m,) * length) + data_shape
    n = data_shape.total_dim
    block = np.zeros((m * n, m * n), dtype=complex)
    for k, u in enumerate(cfg.gate_set.entries):
        block[k * n:(k + 1) * n, k * n:(k + 1) * n] = u.matrix
    c = np.kron(np.eye(m ** (length - 1)), block)
    s = np.kron(shift_permutation(m, length), np.eye(n))
    return Operator(s @ c, shape)


def restrict_to_program(full: Operator, cfg: ProcessorConfig, prog: Program) -> Operator:
    """The data block <K| full |K> for the program basis state |K>."""
    n = cfg.data_shape.total_dim
    k = int(np.ravel_multi_index(tuple(reversed(prog.steps)), (cfg.m,) * cfg.length))
    return Operator(full.matrix[k * n:(k + 1) * n, k * n:(k + 1) * n], cfg.data_shape)


def u1_gate_set(n: int) -> GateSet:
    """Rotations exp(i 2 pi k/N sigma_z), k = 0..N-1."""
    if n < 1:
        raise ContractError(f"N must be >= 1, got {n}")
    return GateSet(tuple(pauli_exp((3,), 2 * math.pi * k / n) for k in range(n)))


@dataclass(frozen=True)
class AngleApproximation:
    m: int
    error: float
    found: bool


def angle_error(m, dtau: float, theta: float):
    """Circular distance between m*dtau and theta."""
    d = np.mod(np.asarray(m) * dtau - theta + math.pi, 2 * math.pi) - math.pi
    return np.abs(d)


def approximate_angle(
    theta: float,
    dtau: float = DEFAULT_DTAU,
    eps: float = 1e-3,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> AngleApproximation:
    """Smallest m in 1..max_steps with |m*dtau - theta| mod 2 pi <= eps.

    When no such m exists the best m found and its error are returned with
    ``found=False``.
    """
    if eps <= 0 or dtau <= 0:
        raise ContractError("eps and dtau must be positive")
    if max_steps < 1:
        raise ContractError("max_steps must be >= 1")
    ms = np.arange(1, max_steps + 1)
    errs = angle_error(ms, dtau, theta)
    hits = np.flatnonzero(errs <= eps)
    if hits.size:
        i = int(hits[0])
        return AngleApproximation(int(ms[i]), float(errs[i]), True)
    i = int(np.argmin(errs))
    return AngleApproximation(int(ms[i]), float(errs[i]), False)


def ordered_product(gs: GateSet, prog: Program | Sequence[int]) -> Operator:
    """u_{k_L} ... u_{k_1} as one matrix (the reference for ``run``)."""
    steps = prog.steps if isinstance(prog, Program) else tuple(prog)
    out = np.eye(gs.data_shape.total_dim, dtype=complex)
    for k in steps:
        out = gs[k].matrix @ out
    return Operator(out, gs.data_shape)
