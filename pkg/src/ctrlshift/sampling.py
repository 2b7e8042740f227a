"""Seeded random states and operators."""

from __future__ import annotations

import numpy as np

from .gates import GateSet
from .linalg import Operator, RegisterShape, ShapeLike, StateVector, as_shape


def random_state(rng: np.random.Generator, shape: ShapeLike) -> StateVector:
    shape = as_shape(shape)
    v = rng.normal(size=shape.total_dim) + 1j * rng.normal(size=shape.total_dim)
    return StateVector.normalized(v, shape)


def random_unitary(rng: np.random.Generator, shape: ShapeLike) -> Operator:
    """Haar-distributed unitary via QR with the phase fix."""
    shape = as_shape(shape)
    n = shape.total_dim
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return Operator(q * (d / np.abs(d)), shape)


def random_hermitian(rng: np.random.Generator, shape: ShapeLike) -> Operator:
    shape = as_shape(shape)
    n = shape.total_dim
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return Operator((a + a.conj().T) / 2, shape)


def random_matrix(rng: np.random.Generator, n: int) -> Operator:
    """Generic (non-unitary) complex matrix."""
    return Operator(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)), RegisterShape((n,)))


def random_gate_set(rng: np.random.Generator, m: int, shape: ShapeLike) -> GateSet:
    """Identity followed by m - 1 Haar unitaries."""
    shape = as_shape(shape)
    return GateSet((Operator.identity(shape),) + tuple(random_unitary(rng, shape) for _ in range(m - 1)))
