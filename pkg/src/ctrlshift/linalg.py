"""Dense complex vectors and matrices over mixed-radix registers.

Index convention is big-endian: the leftmost tensor factor is the most
significant digit, so ``tensor(ket(0), ket(1))`` is basis vector 1 of a
four-dimensional space.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import CapacityError, ContractError

VALIDATION_TOL = 1e-10
IDENTITY_TOL = 1e-12
DEFAULT_MAX_DIM = 2**20


def max_dim() -> int:
    """Capacity limit on total register dimension (env ``CTRLSHIFT_MAX_DIM``)."""
    raw = os.environ.get("CTRLSHIFT_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise ContractError(f"CTRLSHIFT_MAX_DIM must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ContractError(f"CTRLSHIFT_MAX_DIM must be positive, got {value}")
    return value


@dataclass(frozen=True)
class RegisterShape:
    """Per-site dimensions of a register, e.g. ``(3, 2)`` for a qutrit and a qubit."""

    site_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.site_dims)
        if not dims:
            raise ContractError("register shape needs at least one site")
        if any(d < 1 for d in dims):
            raise ContractError(f"site dimensions must be positive, got {dims}")
        object.__setattr__(self, "site_dims", dims)
        if self.total_dim > max_dim():
            raise CapacityError(
                f"total dimension {self.total_dim} exceeds capacity {max_dim()}"
            )

    @property
    def total_dim(self) -> int:
        return math.prod(self.site_dims)

    @property
    def n_sites(self) -> int:
        return len(self.site_dims)

    def __add__(self, other: RegisterShape) -> RegisterShape:
        return RegisterShape(self.site_dims + other.site_dims)

    @classmethod
    def qubits(cls, n: int) -> RegisterShape:
        return cls((2,) * n)


ShapeLike = Union[RegisterShape, Sequence[int], int]


def as_shape(shape: ShapeLike) -> RegisterShape:
    if isinstance(shape, RegisterShape):
        return shape
    if isinstance(shape, (int, np.integer)):
        return RegisterShape((int(shape),))
    return RegisterShape(tuple(shape))


def _guess_shape(dim: int) -> RegisterShape:
    # qubits when the dimension allows it, otherwise a single site
    if dim > 1 and dim & (dim - 1) == 0:
        return RegisterShape.qubits(dim.bit_length() - 1)
    return RegisterShape((dim,))


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=complex, copy=True)
    if not np.all(np.isfinite(out)):
        raise ContractError("non-finite entries")
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm amplitude vector over a register."""

    amps: np.ndarray
    shape: RegisterShape = None  # type: ignore[assignment]

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amps))
        shape = _guess_shape(amps.size) if self.shape is None else as_shape(self.shape)
        if amps.size != shape.total_dim:
            raise ContractError(
                f"{amps.size} amplitudes do not fit shape {shape.site_dims}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > VALIDATION_TOL:
            raise ContractError(f"state norm is {norm!r}, expected 1")
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "shape", shape)

    @classmethod
    def basis(cls, index: int | Sequence[int], shape: ShapeLike) -> StateVector:
        """Computational basis state; ``index`` is flat or one digit per site."""
        shape = as_shape(shape)
        if not isinstance(index, (int, np.integer)):
            index = int(np.ravel_multi_index(tuple(index), shape.site_dims))
        if not 0 <= index < shape.total_dim:
            raise ContractError(f"basis index {index} out of range")
        amps = np.zeros(shape.total_dim, dtype=complex)
        amps[index] = 1.0
        return cls(amps, shape)

    @classmethod
    def normalized(cls, amps, shape: ShapeLike | None = None) -> StateVector:
        amps = np.asarray(amps, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ContractError("cannot normalize the zero vector")
        return cls(amps / norm, shape)

    @property
    def dim(self) -> int:
        return self.amps.size

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.amps, other.amps)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix over a register.

    ``is_unitary`` and ``is_hermitian`` are the validation tags; they are
    computed on first access at tolerance ``VALIDATION_TOL``.
    """

    matrix: np.ndarray
    shape: RegisterShape = None  # type: ignore[assignment]

    def __post_init__(self):
        mat = _frozen(self.matrix)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ContractError(f"operator matrix must be square, got {mat.shape}")
        shape = _guess_shape(mat.shape[0]) if self.shape is None else as_shape(self.shape)
        if mat.shape[0] != shape.total_dim:
            raise ContractError(
                f"{mat.shape[0]}x{mat.shape[0]} matrix does not fit shape {shape.site_dims}"
            )
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "shape", shape)

    @classmethod
    def identity(cls, shape: ShapeLike) -> Operator:
        shape = as_shape(shape)
        return cls(np.eye(shape.total_dim), shape)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def is_unitary(self) -> bool:
        m = self.matrix
        return bool(np.linalg.norm(m.conj().T @ m - np.eye(self.dim)) <= VALIDATION_TOL)

    @cached_property
    def is_hermitian(self) -> bool:
        m = self.matrix
        return bool(np.linalg.norm(m - m.conj().T) <= VALIDATION_TOL)

    @property
    def dagger(self) -> Operator:
        return Operator(self.matrix.conj().T, self.shape)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            _same_shape(self.shape, other.shape)
            return Operator(self.matrix @ other.matrix, self.shape)
        if isinstance(other, StateVector):
            return apply(self, other)
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, complex, np.number)):
            return Operator(self.matrix * scalar, self.shape)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other: Operator) -> Operator:
        _same_shape(self.shape, other.shape)
        return Operator(self.matrix + other.matrix, self.shape)

    def __sub__(self, other: Operator) -> Operator:
        _same_shape(self.shape, other.shape)
        return Operator(self.matrix - other.matrix, self.shape)

    def __neg__(self) -> Operator:
        return Operator(-self.matrix, self.shape)

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.matrix, other.matrix)

    __hash__ = None  # type: ignore[assignment]


def _same_shape(a: RegisterShape, b: RegisterShape) -> None:
    if a != b:
        raise ContractError(f"shape mismatch: {a.site_dims} vs {b.site_dims}")


def tensor(a, b):
    """Kronecker product of two operators or two states, left factor most significant."""
    if isinstance(a, Operator) and isinstance(b, Operator):
        shape = a.shape + b.shape
        return Operator(np.kron(a.matrix, b.matrix), shape)
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        shape = a.shape + b.shape
        return StateVector(np.kron(a.amps, b.amps), shape)
    raise ContractError("tensor operands must both be operators or both be states")


def tensor_all(items: Iterable):
    return reduce(tensor, items)


def apply(op: Operator, state: StateVector) -> StateVector:
    _same_shape(op.shape, state.shape)
    return StateVector(op.matrix @ state.amps, state.shape)


def expi_hermitian(h: Operator, tau: float) -> Operator:
    """Return ``exp(+i h tau)`` by eigendecomposition of the Hermitian ``h``.

    Pass ``-tau`` for the ``exp(-i h t)`` time-evolution convention.
    """
    if not h.is_hermitian:
        raise ContractError("expi_hermitian needs a Hermitian operator")
    m = h.matrix
    evals, evecs = np.linalg.eigh((m + m.conj().T) / 2)
    phases = np.exp(1j * evals * tau)
    return Operator((evecs * phases) @ evecs.conj().T, h.shape)


def overlap(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    _same_shape(a.shape, b.shape)
    return complex(np.vdot(a.amps, b.amps))


def frob_distance(a: Operator, b: Operator) -> float:
    _same_shape(a.shape, b.shape)
    return float(np.linalg.norm(a.matrix - b.matrix))


def commutator(a: Operator, b: Operator) -> Operator:
    _same_shape(a.shape, b.shape)
    return Operator(a.matrix @ b.matrix - b.matrix @ a.matrix, a.shape)


def embed(local: Operator, sites: Sequence[int], shape: ShapeLike) -> Operator:
    """Act with ``local`` on the given (0-based, contiguous or not) sites of ``shape``.

    ``local.shape`` must list the dimensions of ``sites`` in the order given.
    """
    shape = as_shape(shape)
    sites = list(sites)
    if len(set(sites)) != len(sites) or any(not 0 <= s < shape.n_sites for s in sites):
        raise ContractError(f"invalid sites {sites} for {shape.n_sites}-site register")
    local_dims = tuple(shape.site_dims[s] for s in sites)
    if local.shape.site_dims != local_dims:
        raise ContractError(
            f"local operator shape {local.shape.site_dims} does not match sites {local_dims}"
        )
    rest = [s for s in range(shape.n_sites) if s not in sites]
    rest_dim = math.prod(shape.site_dims[s] for s in rest)
    full = np.kron(local.matrix, np.eye(rest_dim))
    # reorder the tensor axes from (sites..., rest...) back to natural order
    order = sites + rest
    n = shape.n_sites
    dims = [shape.site_dims[s] for s in order]
    full = full.reshape(dims + dims)
    inverse = np.argsort(order)
    full = full.transpose(list(inverse) + [n + i for i in inverse])
    return Operator(full.reshape(shape.total_dim, shape.total_dim), shape)


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """min over global phase phi of ||a - exp(i phi) b||."""
    a, b = np.asarray(a), np.asarray(b)
    inner = np.vdot(b, a)
    if abs(inner) > 0:
        b = b * (inner / abs(inner))
    return float(np.linalg.norm(a - b))
