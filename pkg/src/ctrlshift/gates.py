"""Gates and Hamiltonians: Pauli strings, their exponentials, controlled and
conditional operators, and the control Hamiltonians of the programmable
register.

``sigma_2`` follows the sign printed in the source text,
``[[0, i], [-i, 0]]``, which is minus the usual ``sigma_y``.  Every function
that depends on it takes ``standard_y=True`` to switch to the usual matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import ContractError
from .linalg import (
    IDENTITY_TOL,
    Operator,
    RegisterShape,
    embed,
    frob_distance,
)

_SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, 1j], [-1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def pauli(j: int, *, standard_y: bool = False) -> Operator:
    """Single-qubit sigma_j, j in 0..3 (identity, x, y, z)."""
    if j not in (0, 1, 2, 3):
        raise ContractError(f"Pauli index must be 0..3, got {j}")
    m = _SIGMA[j]
    if j == 2 and standard_y:
        m = -m
    return Operator(m, (2,))


@dataclass(frozen=True)
class PauliString:
    """Multi-index ``(j_1, ..., j_n)`` naming the operator sigma_j1 x ... x sigma_jn."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(j) for j in self.indices)
        if not idx:
            raise ContractError("Pauli string needs at least one site")
        if any(j not in (0, 1, 2, 3) for j in idx):
            raise ContractError(f"Pauli indices must be 0..3, got {idx}")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return len(self.indices)

    @classmethod
    def single(cls, n: int, site: int, j: int) -> PauliString:
        """sigma_j on 0-based ``site`` of an n-qubit register."""
        idx = [0] * n
        idx[site] = j
        return cls(tuple(idx))

    def commutes_with(self, other: PauliString) -> bool:
        if len(self) != len(other):
            raise ContractError("Pauli strings of different length")
        clashes = sum(
            1 for a, b in zip(self.indices, other.indices) if a and b and a != b
        )
        return clashes % 2 == 0


def _as_pauli_string(j) -> PauliString:
    return j if isinstance(j, PauliString) else PauliString(tuple(j))


def pauli_string(j, *, standard_y: bool = False) -> Operator:
    j = _as_pauli_string(j)
    mats = [pauli(k, standard_y=standard_y).matrix for k in j.indices]
    return Operator(reduce(np.kron, mats), RegisterShape.qubits(len(j)))


def pauli_exp(j, phi: float, *, standard_y: bool = False) -> Operator:
    """exp(i phi H_j) = cos(phi) 1 + i sin(phi) H_j, valid because H_j^2 = 1."""
    h = pauli_string(j, standard_y=standard_y)
    return Operator(
        math.cos(phi) * np.eye(h.dim) + 1j * math.sin(phi) * h.matrix, h.shape
    )


def commutator_exp(j, k, tau: float, *, standard_y: bool = False) -> Operator:
    """Exact exp(-[H_j, H_k] tau) from three Pauli exponentials.

    Commuting strings give the identity; anticommuting ones give
    exp(i pi/4 H_j) exp(2 i tau H_k) exp(-i pi/4 H_j).
    """
    j, k = _as_pauli_string(j), _as_pauli_string(k)
    if len(j) != len(k):
        raise ContractError(f"Pauli strings of length {len(j)} and {len(k)}")
    if j.commutes_with(k):
        return Operator.identity(RegisterShape.qubits(len(j)))
    quarter = math.pi / 4
    return (
        pauli_exp(j, quarter, standard_y=standard_y)
        @ pauli_exp(k, 2 * tau, standard_y=standard_y)
        @ pauli_exp(j, -quarter, standard_y=standard_y)
    )


def universal_generators(n: int) -> list[PauliString]:
    """The 2n+1 generators Z_0, Z_1, X_0..X_{n-1}, D_0..D_{n-2}."""
    if n < 2:
        raise ContractError(f"universal generator set needs n >= 2, got {n}")
    gens = [PauliString.single(n, 0, 3), PauliString.single(n, 1, 3)]
    gens += [PauliString.single(n, k, 1) for k in range(n)]
    for k in range(n - 1):
        idx = [0] * n
        idx[k] = idx[k + 1] = 3
        gens.append(PauliString(tuple(idx)))
    return gens


def hadamard() -> Operator:
    return Operator(np.array([[1, 1], [1, -1]]) * (math.sqrt(2) / 2), (2,))


def controlled(u: Operator) -> Operator:
    """Lambda_1(u): block-diag(1, 1, u) with the first qubit as control."""
    if u.dim != 2:
        raise ContractError(f"controlled() takes a 2x2 gate, got {u.dim}x{u.dim}")
    if not u.is_unitary:
        raise ContractError("controlled() needs a unitary gate")
    m = np.eye(4, dtype=complex)
    m[2:, 2:] = u.matrix
    return Operator(m, (2, 2))


def cnot12() -> Operator:
    return controlled(pauli(1))


def cnot21() -> Operator:
    m = np.eye(4, dtype=complex)[[0, 3, 2, 1]]
    return Operator(m, (2, 2))


def dnot() -> Operator:
    return controlled(pauli(3))


@dataclass(frozen=True, eq=False)
class GateSet:
    """Ordered gates u_0..u_{m-1} over one data shape; u_0 is the identity."""

    entries: tuple[Operator, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ContractError("gate set is empty")
        shape = entries[0].shape
        for i, u in enumerate(entries):
            if u.shape != shape:
                raise ContractError(f"gate {i} has shape {u.shape.site_dims}, expected {shape.site_dims}")
            if not u.is_unitary:
                raise ContractError(f"gate {i} is not unitary")
        if frob_distance(entries[0], Operator.identity(shape)) > IDENTITY_TOL:
            raise ContractError("gate 0 must be the identity")
        object.__setattr__(self, "entries", entries)

    @property
    def data_shape(self) -> RegisterShape:
        return self.entries[0].shape

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> Operator:
        return self.entries[k]


def conditional(gs: GateSet | Sequence[Operator]) -> Operator:
    """Sum_k |k><k| (x) u_k with the program register first."""
    if not isinstance(gs, GateSet):
        gs = GateSet(tuple(gs))
    m, n = len(gs), gs.data_shape.total_dim
    mat = np.zeros((m * n, m * n), dtype=complex)
    for k, u in enumerate(gs.entries):
        mat[k * n:(k + 1) * n, k * n:(k + 1) * n] = u.matrix
    return Operator(mat, RegisterShape((m,)) + gs.data_shape)


def swap_gate(d: int) -> Operator:
    """|k>|l> -> |l>|k> on two d-level sites."""
    if d not in (2, 3):
        raise ContractError(f"swap supports site dimension 2 or 3, got {d}")
    perm = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        for l in range(d):
            perm[l * d + k, k * d + l] = 1
    return Operator(perm, (d, d))


class ControlHamiltonianKind(enum.Enum):
    X2 = "X2"
    Z2 = "Z2"
    D3 = "D3"
    P3 = "P3"
    QUTRIT32 = "QUTRIT32"
    D3_CENTERED = "D3_CENTERED"


def _block_diag(blocks, control_dim: int) -> np.ndarray:
    n = 2
    mat = np.zeros((control_dim * n, control_dim * n), dtype=complex)
    for k, b in enumerate(blocks):
        mat[k * n:(k + 1) * n, k * n:(k + 1) * n] = b
    return mat


_ZERO2 = np.zeros((2, 2), dtype=complex)


def control_hamiltonian(kind: ControlHamiltonianKind | str) -> Operator:
    """The printed control Hamiltonians; control sites come first except for D3_CENTERED."""
    kind = ControlHamiltonianKind(kind)
    x, z = _SIGMA[1], _SIGMA[3]
    if kind is ControlHamiltonianKind.X2:
        return Operator(_block_diag([_ZERO2, x], 2), (2, 2))
    if kind is ControlHamiltonianKind.Z2:
        return Operator(_block_diag([_ZERO2, z], 2), (2, 2))
    if kind is ControlHamiltonianKind.D3:
        return Operator(np.diag([0, 0, 0, 0, 1, -1, -1, 1]), (2, 2, 2))
    if kind is ControlHamiltonianKind.P3:
        m = np.zeros((8, 8), dtype=complex)
        m[2, 3] = m[3, 2] = 1
        m[4, 5], m[5, 4] = 1j, -1j
        m[6, 6], m[7, 7] = 1, -1
        return Operator(m, (2, 2, 2))
    if kind is ControlHamiltonianKind.QUTRIT32:
        m = np.zeros((6, 6), dtype=complex)
        m[2, 3] = m[3, 2] = 1
        m[4, 4], m[5, 5] = 1, -1
        return Operator(m, (3, 2))
    # sigma_z (x) |1><1| (x) sigma_z
    proj1 = np.diag([0, 1]).astype(complex)
    return Operator(reduce(np.kron, [z, proj1, z]), (2, 2, 2))


def qutrit_control_projector_form(*, idle_identity: bool = False) -> Operator:
    """|1><1| (x) sigma_x + |2><2| (x) sigma_z on qutrit (x) qubit.

    The idle branch |0><0| (x) 1 is left out by default so that the result is
    the 6x6 matrix whose control-|0> block is zero; ``idle_identity=True``
    includes it, which only adds a phase to the idle branch.
    """
    proj = [np.diag(np.eye(3)[k]).astype(complex) for k in range(3)]
    m = np.kron(proj[1], _SIGMA[1]) + np.kron(proj[2], _SIGMA[3])
    if idle_identity:
        m = m + np.kron(proj[0], _SIGMA[0])
    return Operator(m, (3, 2))


def control_block(h: Operator, k: int) -> Operator:
    """The data Hamiltonian selected by basis state |k> of the first site of ``h``."""
    c = h.shape.site_dims[0]
    if not 0 <= k < c:
        raise ContractError(f"control index {k} out of range for a {c}-level control")
    rest = RegisterShape(h.shape.site_dims[1:])
    n = rest.total_dim
    return Operator(h.matrix[k * n:(k + 1) * n, k * n:(k + 1) * n], rest)


def _interior_sign(a, b, target, standard_y: bool) -> int:
    """Sign s with i * A * B = s * target for anticommuting Pauli strings A, B."""
    prod = 1j * pauli_string(a, standard_y=standard_y).matrix @ pauli_string(b, standard_y=standard_y).matrix
    t = pauli_string(target, standard_y=standard_y).matrix
    if np.allclose(prod, t, atol=IDENTITY_TOL):
        return 1
    if np.allclose(prod, -t, atol=IDENTITY_TOL):
        return -1
    raise AssertionError("conjugated string is not +-target")


def decompose_controlled_diag(
    tau: float, centered: bool = False, *, standard_y: bool = False
) -> list[Operator]:
    """Four two-body exponentials whose ordered product is exp(i h tau).

    ``h`` is control_hamiltonian(D3) (control first) or D3_CENTERED (control in
    the middle).  The three-body term exp(-i tau/2 Z Z Z) is written as the
    conjugation exp(i pi/4 A) exp(-i s tau/2 B) exp(-i pi/4 A); conjugating
    B by exp(i pi/4 A) gives i A B, so s is chosen with i A B = s Z Z Z.
    Under the sigma_2 sign used here s = +1 and the factors are exactly the
    printed ones; ``standard_y=True`` flips s.
    """
    if centered:
        pair, a, b = (3, 0, 3), (3, 1, 0), (0, 2, 3)
    else:
        pair, a, b = (0, 3, 3), (1, 3, 0), (2, 0, 3)
    s = _interior_sign(a, b, (3, 3, 3), standard_y)
    quarter = math.pi / 4
    return [
        pauli_exp(pair, tau / 2, standard_y=standard_y),
        pauli_exp(a, quarter, standard_y=standard_y),
        pauli_exp(b, -s * tau / 2, standard_y=standard_y),
        pauli_exp(a, -quarter, standard_y=standard_y),
    ]


def indexed_two_qubit_hamiltonian(k: int, total_sites: int) -> Operator:
    """Two-qubit control term with its control qubit at site 2k (1-based).

    Data qubits sit at odd sites, so the term couples sites 2k-1 and 2k+1:
    1/2 (Z_{2k-1} Z_{2k+1} - Z_{2k-1} Z_{2k} Z_{2k+1}).
    """
    if k < 1 or 2 * k + 1 > total_sites:
        raise ContractError(
            f"control site {2 * k} needs neighbours inside 1..{total_sites}"
        )
    local = control_hamiltonian(ControlHamiltonianKind.D3_CENTERED)
    sites = [2 * k - 2, 2 * k - 1, 2 * k]
    return embed(local, sites, RegisterShape.qubits(total_sites))


def named_gate(name: str) -> Operator:
    table = {
        "cnot12": cnot12,
        "cnot21": cnot21,
        "dnot": dnot,
        "hadamard": hadamard,
        "swap": lambda: swap_gate(2),
    }
    try:
        return table[name]()
    except KeyError:
        raise ContractError(f"unknown gate name {name!r}") from None

