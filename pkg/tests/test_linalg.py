import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from ctrlshift.errors import CapacityError, ContractError
from ctrlshift.linalg import (
    Operator,
    RegisterShape,
    StateVector,
    apply,
    commutator,
    embed,
    expi_hermitian,
    frob_distance,
    overlap,
    phase_aligned_distance,
    tensor,
    tensor_all,
)
from ctrlshift.sampling import random_hermitian, random_state, random_unitary

seeds = st.integers(0, 2**32 - 1)


def test_big_endian_basis():
    ket0 = StateVector.basis(0, (2,))
    ket1 = StateVector.basis(1, (2,))
    assert np.argmax(np.abs(tensor(ket0, ket1).amps)) == 1
    assert np.argmax(np.abs(tensor(ket1, ket0).amps)) == 2


def test_basis_from_digits_mixed_radix():
    s = StateVector.basis((1, 1), (3, 2))
    assert s.shape == RegisterShape((3, 2))
    assert s.amps[3] == 1


def test_shape_rejects_nonpositive():
    with pytest.raises(ContractError):
        RegisterShape((2, 0))
    with pytest.raises(ContractError):
        RegisterShape(())


def test_capacity_limit(monkeypatch):
    monkeypatch.setenv("CTRLSHIFT_MAX_DIM", "16")
    RegisterShape.qubits(4)
    with pytest.raises(CapacityError):
        RegisterShape.qubits(5)


def test_default_capacity():
    RegisterShape.qubits(20)
    with pytest.raises(CapacityError):
        RegisterShape.qubits(21)


def test_state_norm_enforced():
    with pytest.raises(ContractError):
        StateVector(np.array([1.0, 1.0]))
    StateVector(np.array([1.0, 1e-12]))


def test_state_is_read_only():
    s = StateVector.basis(0, 2)
    with pytest.raises(ValueError):
        s.amps[0] = 2


def test_shape_mismatch():
    with pytest.raises(ContractError):
        StateVector(np.ones(3) / math.sqrt(3), (2, 2))
    with pytest.raises(ContractError):
        Operator.identity((2,)) @ Operator.identity((3,))


def test_operator_tags():
    assert Operator.identity((2, 3)).is_unitary
    assert Operator(np.diag([1.0, 2.0])).is_hermitian
    assert not Operator(np.diag([1.0, 2.0])).is_unitary
    assert not Operator(np.array([[0, 1], [0, 0]])).is_hermitian


def test_tensor_mixed_radix():
    a = Operator.identity((3,))
    b = Operator(np.array([[0, 1], [1, 0]]))
    t = tensor(a, b)
    assert t.shape == RegisterShape((3, 2))
    assert np.array_equal(t.matrix, np.kron(np.eye(3), b.matrix))


def test_tensor_with_dim_one_identity():
    a = Operator(np.array([[0, 1], [1, 0]]))
    t = tensor(a, Operator.identity((1,)))
    assert np.array_equal(t.matrix, a.matrix)


@given(seeds)
def test_tensor_associative_exact(seed):
    # integer entries, so every product is exact
    rng = np.random.default_rng(seed)
    a, b, c = (Operator(rng.integers(-3, 4, size=(d, d)) + 1j * rng.integers(-3, 4, size=(d, d)))
               for d in (2, 3, 2))
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert np.array_equal(left.matrix, right.matrix)
    assert left.shape == right.shape == tensor_all([a, b, c]).shape


@given(seeds)
def test_tensor_associative_float(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_unitary(rng, (2,)) for _ in range(3))
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert np.linalg.norm(left.matrix - right.matrix) <= 1e-15


@given(seeds)
def test_apply_preserves_norm(seed):
    rng = np.random.default_rng(seed)
    u = random_unitary(rng, (2, 3))
    s = random_state(rng, (2, 3))
    assert abs(np.linalg.norm(apply(u, s).amps) - 1) <= 1e-12


def test_apply_rejects_non_unitary():
    with pytest.raises(ContractError):
        apply(Operator(np.diag([2.0, 1.0])), StateVector.basis(0, 2))


@given(seeds, st.floats(-3, 3), st.floats(-3, 3))
def test_expi_group_law(seed, a, b):
    h = random_hermitian(np.random.default_rng(seed), (3,))
    lhs = expi_hermitian(h, a).matrix @ expi_hermitian(h, b).matrix
    assert np.linalg.norm(lhs - expi_hermitian(h, a + b).matrix) <= 1e-12 * (1 + abs(a) + abs(b)) * 10


@given(seeds, st.floats(-2, 2))
def test_expi_matches_expm(seed, tau):
    h = random_hermitian(np.random.default_rng(seed), (2, 2))
    ref = expm(1j * tau * h.matrix)
    assert np.linalg.norm(expi_hermitian(h, tau).matrix - ref) <= 1e-11


def test_expi_examples():
    z = Operator(np.diag([1.0, -1.0]))
    u = expi_hermitian(z, math.pi / 2).matrix
    assert np.allclose(u, np.diag([1j, -1j]), atol=1e-12)
    assert np.allclose(expi_hermitian(z, 0.0).matrix, np.eye(2), atol=1e-15)


def test_expi_rejects_non_hermitian():
    with pytest.raises(ContractError):
        expi_hermitian(Operator(np.array([[0, 1], [0, 0]])), 1.0)


@given(seeds)
def test_overlap_conjugate_symmetric(seed):
    rng = np.random.default_rng(seed)
    a, b = random_state(rng, (4,)), random_state(rng, (4,))
    assert overlap(a, b) == pytest.approx(np.conj(overlap(b, a)), abs=1e-15)


def test_frob_distance_examples():
    x = Operator(np.array([[0, 1], [1, 0]]))
    z = Operator(np.diag([1, -1]))
    i2 = Operator.identity(2)
    assert frob_distance(i2, i2) == 0
    assert frob_distance(x, z) == pytest.approx(2)
    assert frob_distance(i2, -i2) == pytest.approx(2 * math.sqrt(2))


def test_commutator_of_paulis():
    x = Operator(np.array([[0, 1], [1, 0]]))
    z = Operator(np.diag([1, -1]))
    c = commutator(x, z).matrix
    assert np.allclose(c, x.matrix @ z.matrix - z.matrix @ x.matrix)
    assert np.linalg.norm(c) > 0


@given(seeds, st.permutations([0, 1, 2]))
def test_embed_matches_kron_oracle(seed, order):
    rng = np.random.default_rng(seed)
    dims = (2, 3, 2)
    shape = RegisterShape(dims)
    sites = list(order[:2])
    local = random_unitary(rng, tuple(dims[s] for s in sites))
    full = embed(local, sites, shape).matrix
    # oracle: act on basis states digit by digit
    ref = np.zeros_like(full)
    for col in range(shape.total_dim):
        digits = np.unravel_index(col, dims)
        sub = int(np.ravel_multi_index([digits[s] for s in sites], [dims[s] for s in sites]))
        for row_sub in range(local.dim):
            new = list(digits)
            for s, v in zip(sites, np.unravel_index(row_sub, [dims[s] for s in sites])):
                new[s] = v
            ref[np.ravel_multi_index(new, dims), col] += local.matrix[row_sub, sub]
    assert np.array_equal(full, ref)


def test_embed_errors():
    with pytest.raises(ContractError):
        embed(Operator.identity((2,)), [3], (2, 2))
    with pytest.raises(ContractError):
        embed(Operator.identity((2,)), [0], (3, 2))


def test_phase_aligned_distance():
    v = np.array([1, 1j]) / math.sqrt(2)
    assert phase_aligned_distance(v, np.exp(0.7j) * v) <= 1e-15
    assert phase_aligned_distance(v, np.array([1, 0])) > 0.5
