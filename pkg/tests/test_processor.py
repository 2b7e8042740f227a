import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctrlshift.errors import ContractError
from ctrlshift.gates import GateSet, pauli
from ctrlshift.linalg import Operator, StateVector
from ctrlshift.processor import (
    JointState,
    ProcessorConfig,
    Program,
    angle_error,
    approximate_angle,
    conditional_full_operator,
    control_step,
    ordered_product,
    restrict_to_program,
    run,
    run_joint,
    shift,
    u1_gate_set,
)
from ctrlshift.sampling import random_gate_set, random_state

seeds = st.integers(0, 2**32 - 1)
XZ = GateSet((pauli(0), pauli(1), pauli(3)))


def brute_force(gs, steps, psi):
    out = psi.amps
    for k in steps:
        out = gs[k].matrix @ out
    return out


def test_program_contract():
    with pytest.raises(ContractError):
        Program(())
    with pytest.raises(ContractError):
        Program((0, -1))
    assert (Program((1,)) + Program((2, 0))).steps == (1, 2, 0)


def test_shift_examples():
    js = JointState((3, 2, 1), StateVector.basis(0, 2))
    assert shift(js).program_control == (1, 3, 2)
    single = JointState((4,), js.data)
    assert shift(single).program_control == (4,)
    cur = js
    for _ in range(3):
        cur = shift(cur)
    assert cur.program_control == js.program_control


def test_control_step():
    cfg = ProcessorConfig(GateSet((pauli(0), pauli(1))), 1)
    zero = StateVector.basis(0, 2)
    assert control_step(JointState((0,), zero), cfg).data == zero
    assert np.array_equal(control_step(JointState((1,), zero), cfg).data.amps, [0, 1])
    with pytest.raises(ContractError):
        control_step(JointState((2,), zero), cfg)


def test_run_examples():
    zero = StateVector.basis(0, 2)
    cfg = ProcessorConfig(XZ, 2)
    assert run(Program((0, 0)), cfg, zero) == zero
    assert np.allclose(run(Program((1, 2)), cfg, zero).amps, [0, -1], atol=0)


def test_run_errors():
    zero = StateVector.basis(0, 2)
    with pytest.raises(ContractError):
        run(Program((1,)), ProcessorConfig(XZ, 2), zero)
    with pytest.raises(ContractError):
        run(Program((3, 0)), ProcessorConfig(XZ, 2), zero)
    with pytest.raises(ContractError):
        ProcessorConfig(XZ, 0)


@given(seeds)
def test_run_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    m, length = int(rng.integers(1, 5)), int(rng.integers(1, 7))
    gs = random_gate_set(rng, m, (2, 2))
    steps = tuple(int(k) for k in rng.integers(0, m, size=length))
    psi = random_state(rng, (2, 2))
    js = run_joint(Program(steps), ProcessorConfig(gs, length), psi)
    assert np.linalg.norm(js.data.amps - brute_force(gs, steps, psi)) <= 1e-12
    assert js.program_control == tuple(reversed(steps))


@given(seeds)
def test_run_composes(seed):
    rng = np.random.default_rng(seed)
    gs = random_gate_set(rng, 3, (3,))
    a = Program(tuple(int(k) for k in rng.integers(0, 3, size=3)))
    b = Program(tuple(int(k) for k in rng.integers(0, 3, size=2)))
    psi = random_state(rng, (3,))
    two = run(b, ProcessorConfig(gs, 2), run(a, ProcessorConfig(gs, 3), psi))
    one = run(a + b, ProcessorConfig(gs, 5), psi)
    assert np.linalg.norm(one.amps - two.amps) <= 1e-12


def test_full_operator_single_step_is_cnot():
    cfg = ProcessorConfig(GateSet((pauli(0), pauli(1))), 1)
    full = conditional_full_operator(cfg)
    assert np.array_equal(full.matrix, np.eye(4)[[0, 1, 3, 2]])


@pytest.mark.parametrize("shape", [(2,), (3,), (2, 2)])
@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("length", [1, 2, 3])
def test_full_operator_matches_run(shape, m, length):
    rng = np.random.default_rng(m * 10 + length)
    gs = random_gate_set(rng, m, shape)
    cfg = ProcessorConfig(gs, length)
    full = conditional_full_operator(cfg)
    assert full.is_unitary
    power = Operator(np.linalg.matrix_power(full.matrix, length), full.shape)
    psi = random_state(rng, shape)
    for steps in itertools.product(range(m), repeat=length):
        block = restrict_to_program(power, cfg, Program(steps)).matrix
        assert np.linalg.norm(block @ psi.amps - run(Program(steps), cfg, psi).amps) <= 1e-12
        assert np.linalg.norm(block - ordered_product(gs, steps).matrix) <= 1e-12


def test_u1_gate_set():
    assert len(u1_gate_set(1)) == 1
    gs = u1_gate_set(4)
    assert np.allclose(gs[1].matrix, np.diag([1j, -1j]), atol=1e-15)
    for k in range(1, 4):
        assert np.allclose(gs[k].matrix @ gs[4 - k].matrix, np.eye(2), atol=1e-15)
    with pytest.raises(ContractError):
        u1_gate_set(0)


def test_approximate_angle_examples():
    r = approximate_angle(1.0, 1.0)
    assert r.m == 1 and r.error == 0 and r.found
    r = approximate_angle(math.pi / 4, 1.0, 1e-3, 10**5)
    assert r.found and r.m <= 10**5 and r.error <= 1e-3
    r = approximate_angle(0.3, math.pi / 2, 1e-6, 10**4)
    assert not r.found
    with pytest.raises(ContractError):
        approximate_angle(0.3, 1.0, eps=0)


def test_approximate_angle_is_first_hit():
    r = approximate_angle(math.pi / 4, 1.0, 1e-2, 10**5)
    ms = np.arange(1, r.m)
    assert np.all(angle_error(ms, 1.0, math.pi / 4) > 1e-2)


@given(st.floats(-10, 10), st.integers(1, 2000), st.integers(1, 2000))
def test_angle_error_monotone_in_max_steps(theta, a, b):
    lo, hi = sorted((a, b))
    small = approximate_angle(theta, 1.0, 1e-9, lo)
    big = approximate_angle(theta, 1.0, 1e-9, hi)
    assert big.error <= small.error
