"""Registry of seeded numerical checks, grouped into suites.

Each check yields one or more records ``{check, params, metric, tol, pass}``.
A record passes when ``metric`` compares to ``tol`` as the check's mode says
(``le``: metric <= tol, ``gt``: metric > tol, ``ge``: metric >= tol,
``eq``: metric == tol).  A tolerance override only replaces ``le`` bounds.
"""

from __future__ import annotations

import itertools
import math
import zlib
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import gates, processor, qca, theorems
from .errors import StructureError
from .linalg import (
    IDENTITY_TOL,
    Operator,
    RegisterShape,
    StateVector,
    commutator,
    expi_hermitian,
    phase_aligned_distance,
)
from .sampling import random_gate_set, random_matrix, random_state, random_unitary

SUITES = ("gates", "processor", "qca", "theorems")
_MODES = {
    "le": lambda metric, tol: metric <= tol,
    "gt": lambda metric, tol: metric > tol,
    "ge": lambda metric, tol: metric >= tol,
    "eq": lambda metric, tol: metric == tol,
}

Measurement = tuple[dict, float]


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    tol: float
    mode: str
    fn: Callable[[np.random.Generator], Iterable[Measurement]]


REGISTRY: dict[str, Check] = {}


def check(suite: str, tol: float, mode: str = "le"):
    def register(fn):
        name = f"{suite}.{fn.__name__}"
        REGISTRY[name] = Check(name, suite, tol, mode, fn)
        return fn

    return register


def _rng(seed: int, name: str) -> np.random.Generator:
    # per-check stream, so results do not depend on execution order
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def run_check(c: Check, seed: int = 0, tol: float | None = None) -> list[dict]:
    limit = tol if (tol is not None and c.mode == "le") else c.tol
    records = []
    for params, metric in c.fn(_rng(seed, c.name)):
        metric = float(metric)
        records.append(
            {
                "check": c.name,
                "params": params,
                "metric": metric,
                "tol": limit,
                "pass": bool(_MODES[c.mode](metric, limit)),
            }
        )
    return records


def run_suite(suite: str = "all", seed: int = 0, tol: float | None = None) -> list[dict]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    chosen = [c for c in REGISTRY.values() if suite == "all" or c.suite == suite]
    records = []
    for c in sorted(chosen, key=lambda c: c.name):
        records.extend(run_check(c, seed, tol))
    return records


def _fro(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def _all_strings(n: int):
    return [gates.PauliString(idx) for idx in itertools.product(range(4), repeat=n)]


# --- gates -------------------------------------------------------------------


@check("gates", IDENTITY_TOL)
def pauli_algebra(rng):
    for n in (1, 2):
        worst = 0.0
        strings = _all_strings(n)
        for a in strings:
            ha = gates.pauli_string(a).matrix
            worst = max(worst, _fro(ha @ ha, np.eye(2**n)), _fro(ha, ha.conj().T))
            for b in strings:
                hb = gates.pauli_string(b).matrix
                sign = 1 if a.commutes_with(b) else -1
                worst = max(worst, _fro(ha @ hb, sign * hb @ ha))
        yield {"n": n}, worst


@check("gates", IDENTITY_TOL)
def pauli_exp_closed_form(rng):
    for n in (1, 2, 3):
        worst = 0.0
        for _ in range(10):
            j = tuple(int(x) for x in rng.integers(0, 4, size=n))
            phi = float(rng.uniform(-math.pi, math.pi))
            ref = expi_hermitian(gates.pauli_string(j), phi).matrix
            worst = max(worst, _fro(gates.pauli_exp(j, phi).matrix, ref))
        yield {"n": n}, worst


@check("gates", IDENTITY_TOL)
def commutator_exponential(rng):
    for n in (1, 2, 3):
        worst = 0.0
        strings = _all_strings(n)
        for a, b in itertools.product(strings, repeat=2):
            if a.commutes_with(b):
                continue
            ha, hb = gates.pauli_string(a), gates.pauli_string(b)
            ic = Operator(1j * commutator(ha, hb).matrix, ha.shape)
            for tau in (0.1, 0.7, 1.3):
                ref = expi_hermitian(ic, tau).matrix
                worst = max(worst, _fro(gates.commutator_exp(a, b, tau).matrix, ref))
        yield {"n": n}, worst


@check("gates", 0.0, "eq")
def commutator_exponential_commuting(rng):
    bad = 0
    for a, b in itertools.product(_all_strings(2), repeat=2):
        if a.commutes_with(b):
            u = gates.commutator_exp(a, b, 0.7).matrix
            bad += int(not np.array_equal(u, np.eye(4)))
    yield {"n": 2}, bad


@check("gates", IDENTITY_TOL)
def basis_change_symmetry(rng):
    hh = np.kron(gates.hadamard().matrix, gates.hadamard().matrix)
    yield {}, _fro(hh @ gates.cnot12().matrix @ hh, gates.cnot21().matrix)


@check("gates", IDENTITY_TOL)
def controlled_diag_decomposition(rng):
    for centered, standard_y in itertools.product((False, True), repeat=2):
        kind = "D3_CENTERED" if centered else "D3"
        h = gates.control_hamiltonian(kind)
        worst = 0.0
        for tau in (0.1, 0.3, 0.7, 1.0, 2.0):
            f = gates.decompose_controlled_diag(tau, centered, standard_y=standard_y)
            prod = f[0].matrix @ f[1].matrix @ f[2].matrix @ f[3].matrix
            worst = max(worst, _fro(prod, expi_hermitian(h, tau).matrix))
        yield {"centered": centered, "standard_y": standard_y}, worst


@check("gates", IDENTITY_TOL)
def centered_spectrum(rng):
    ev = np.linalg.eigvalsh(gates.control_hamiltonian("D3_CENTERED").matrix)
    yield {}, _fro(np.sort(ev), [-1, -1, 0, 0, 0, 0, 1, 1])


@check("gates", IDENTITY_TOL)
def qutrit_projector_form(rng):
    yield {}, _fro(
        gates.qutrit_control_projector_form().matrix,
        gates.control_hamiltonian("QUTRIT32").matrix,
    )


@check("gates", IDENTITY_TOL)
def swap_from_cnots(rng):
    a, b = gates.cnot12().matrix, gates.cnot21().matrix
    yield {}, _fro(a @ b @ a, gates.swap_gate(2).matrix)


# --- processor ---------------------------------------------------------------


@check("processor", IDENTITY_TOL)
def run_vs_product(rng):
    worst = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 5))
        length = int(rng.integers(1, 7))
        gs = random_gate_set(rng, m, (2, 2))
        prog = processor.Program(tuple(int(k) for k in rng.integers(0, m, size=length)))
        psi = random_state(rng, (2, 2))
        out = processor.run(prog, processor.ProcessorConfig(gs, length), psi)
        ref = processor.ordered_product(gs, prog).matrix @ psi.amps
        worst = max(worst, _fro(out.amps, ref))
    yield {"instances": 100}, worst


@check("processor", IDENTITY_TOL)
def full_operator(rng):
    for shape in ((2,), (3,), (2, 2)):
        worst = 0.0
        for m in (1, 2, 3):
            gs = random_gate_set(rng, m, shape)
            for length in (1, 2, 3):
                cfg = processor.ProcessorConfig(gs, length)
                full = processor.conditional_full_operator(cfg)
                power = np.linalg.matrix_power(full.matrix, length)
                full_l = Operator(power, full.shape)
                for steps in itertools.product(range(m), repeat=length):
                    prog = processor.Program(steps)
                    block = processor.restrict_to_program(full_l, cfg, prog).matrix
                    worst = max(worst, _fro(block, processor.ordered_product(gs, prog).matrix))
        yield {"data_shape": list(shape)}, worst


@check("processor", 1e-3)
def angle_search(rng):
    res = processor.approximate_angle(math.pi / 4, 1.0, 1e-3, 10**5)
    yield {"theta": "pi/4", "dtau": 1.0, "m": res.m}, res.error if res.found else math.inf


@check("processor", 0.0, "eq")
def angle_rational_unreachable(rng):
    res = processor.approximate_angle(0.3, math.pi / 2, 1e-6, 10**4)
    yield {"theta": 0.3, "dtau": "pi/2"}, float(res.found)


@check("processor", IDENTITY_TOL)
def u1_composition(rng):
    n = 8
    gs = processor.u1_gate_set(n)
    worst = 0.0
    for a, b in itertools.product(range(n), repeat=2):
        worst = max(worst, _fro(gs[a].matrix @ gs[b].matrix, gs[(a + b) % n].matrix))
    yield {"N": n}, worst


# --- qca ---------------------------------------------------------------------


def _qca_instance(rng, d: int, length: int):
    table = [qca.Instruction.idle(d)]
    for _ in range(3):
        one = tuple(int(v) for v in rng.integers(0, 3, size=d))
        two = tuple(int(v) for v in rng.integers(0, 2, size=d - 1))
        table.append(qca.Instruction.checkerboard(one, two))
    steps = tuple(int(k) for k in rng.integers(0, len(table), size=length))
    return table, processor.Program(steps)


@check("qca", 1e-10)
def processor_equivalence(rng):
    d, length, dtau = 3, 4, 1.0
    for trial in range(3):
        table, prog = _qca_instance(rng, d, length)
        data = random_state(rng, RegisterShape.qubits(d))
        lat = qca.encode_program(table, prog, data)
        cfg = processor.ProcessorConfig(qca.instruction_gate_set(table, d, dtau), length)
        yield {"trial": trial, "program": list(prog.steps)}, qca.cross_check_processor(
            lat, cfg, prog, table, dtau
        )


@check("qca", 0.0, "eq")
def lines_restored(rng):
    d, length = 3, 4
    for sequence in ("U_IV", "U_VI"):
        table, prog = _qca_instance(rng, d, length)
        lat = qca.encode_program(table, prog, StateVector.basis(0, RegisterShape.qubits(d)))
        out = qca.evolve(lat, sequence, lat.perimeter // 2)
        yield {"sequence": sequence}, float(out.line_contents() != lat.line_contents())


@check("qca", IDENTITY_TOL)
def global_local_factorization(rng):
    sites = 9
    hams = [gates.indexed_two_qubit_hamiltonian(k, sites) for k in range(1, 5)]
    for dtau in (0.3, 1.0):
        yield {"sites": sites, "dtau": dtau}, qca.global_vs_local_check(hams, dtau)


@check("qca", 0.0, "eq")
def zero_program_identity(rng):
    d = 2
    data = random_state(rng, RegisterShape.qubits(d))
    prog = processor.Program((0, 0))
    lat = qca.encode_program([qca.Instruction.idle(d)], prog, data)
    out = qca.evolve(lat, "U_IV", 2)
    yield {"data_qubits": d}, _fro(out.data.amps, data.amps)


# --- theorems ----------------------------------------------------------------


@check("theorems", IDENTITY_TOL)
def orthogonality_basis_programs(rng):
    for m in (2, 3):
        gs = random_gate_set(rng, m, (2,))
        u = gates.conditional(gs)
        samples = [random_state(rng, (2,)) for _ in range(10)]
        worst = 0.0
        for a, b in itertools.combinations(range(m), 2):
            rep = theorems.program_orthogonality_check(
                u, (StateVector.basis(a, (m,)), StateVector.basis(b, (m,))), samples
            )
            worst = max(worst, rep.max_violation, abs(rep.overlap_pp))
        yield {"m": m}, worst


@check("theorems", 0.1, "gt")
def nonorthogonal_program_entangles(rng):
    u = gates.conditional([gates.pauli(0), gates.pauli(1)])
    plus = StateVector.normalized([1, 1], (2,))
    yield {"program": "plus"}, theorems.product_structure_violation(u, plus, RegisterShape((2,)))


@check("theorems", 1e-10)
def output_independence(rng):
    gs = random_gate_set(rng, 3, (2,))
    u = gates.conditional(gs)
    worst = 0.0
    for _ in range(10):
        prog = StateVector.basis(int(rng.integers(0, 3)), (3,))
        pair = (random_state(rng, (2,)), random_state(rng, (2,)))
        worst = max(worst, theorems.output_independence_check(u, prog, pair))
    yield {"m": 3}, worst


@check("theorems", IDENTITY_TOL)
def programming_operator(rng):
    for n in (2, 3, 4, 5):
        worst = 0.0
        for _ in range(20):
            psi = random_state(rng, (n,))
            a = random_matrix(rng, n)
            out, _ = theorems.apply_programming_operator(psi, a)
            ref = np.kron(a.matrix @ psi.amps, np.eye(n * n)[0])
            worst = max(worst, _fro(out, ref))
        yield {"N": n}, worst


@check("theorems", 0.5, "gt")
def programming_operator_nonunitary(rng):
    for n in (2, 3, 4, 5):
        m = theorems.matrix_mult_operator(n).matrix
        yield {"N": n}, _fro(m.conj().T @ m, np.eye(n**3))


@check("theorems", IDENTITY_TOL)
def operator_state_bell_basis(rng):
    names = ("phi+", "psi+", "psi-", "phi-")
    worst = 0.0
    for k, name in enumerate(names):
        enc = theorems.encode_operator_state(gates.pauli(k)).amps
        worst = max(worst, phase_aligned_distance(enc, theorems.bell_state(name)))
    yield {}, worst


@check("theorems", IDENTITY_TOL)
def bell_reconstruction(rng):
    worst_rec = worst_prob = worst_post = 0.0
    for _ in range(50):
        psi = random_state(rng, (2,))
        u = random_unitary(rng, (2,))
        joint = np.kron(psi.amps, theorems.encode_operator_state(u).amps)
        worst_rec = max(worst_rec, _fro(theorems.bell_expansion(psi, u), joint))
        for outcome in theorems.BELL_OUTCOMES:
            prob, post = theorems.bell_project(psi, u, outcome)
            worst_prob = max(worst_prob, abs(prob - 0.25))
            if outcome == "phi+":
                worst_post = max(worst_post, phase_aligned_distance(post.amps, u.matrix @ psi.amps))
    yield {"quantity": "reconstruction"}, worst_rec
    yield {"quantity": "probability"}, worst_prob
    yield {"quantity": "phi+ post-state"}, worst_post


@check("theorems", IDENTITY_TOL)
def residue_identity(rng):
    n = 2
    l_map = theorems.programming_map(n)
    g = random_unitary(rng, (n, n, n))
    samples = [
        np.kron(random_state(rng, (n,)).amps, theorems.encode_operator_state(random_unitary(rng, (n,))).amps)
        for _ in range(5)
    ]
    rep = theorems.residue_decomposition(g, l_map, samples)
    yield {"N": n}, rep.identity_residual
    worst = 0.0
    for _ in range(5):
        psi = random_state(rng, (n,))
        u = random_unitary(rng, (n,))
        x = np.kron(psi.amps, theorems.encode_operator_state(u).amps)
        worst = max(worst, _fro(l_map.matrix @ x, np.kron(u.matrix @ psi.amps, np.eye(n * n)[0])))
    yield {"N": n, "quantity": "programming map"}, worst


@check("theorems", 0.0, "eq")
def lie_closure(rng):
    for n in (2, 3):
        gens = [gates.pauli_string(g) for g in gates.universal_generators(n)]
        rep = theorems.lie_closure_dimension(gens, max_depth=10)
        yield {"n": n, "depth": rep.depth_reached}, float(4**n - 1 - rep.closure_dimension)


@check("theorems", 1.8, "ge")
def product_formula_order_sum(rng):
    taus = [0.2, 0.1, 0.05, 0.025]
    errs = [theorems.product_formula_error(gates.pauli(1), gates.pauli(3), t)[0] for t in taus]
    yield {"pair": "x,z"}, theorems.empirical_order(taus, errs)


@check("theorems", 2.7, "ge")
def product_formula_order_commutator(rng):
    taus = [0.2, 0.1, 0.05, 0.025]
    errs = [theorems.product_formula_error(gates.pauli(1), gates.pauli(3), t)[1] for t in taus]
    yield {"pair": "x,z"}, theorems.empirical_order(taus, errs)


@check("theorems", IDENTITY_TOL)
def rebit_state_independence(rng):
    worst = 0.0
    for phi in np.linspace(0, 2 * math.pi, 10):
        for _ in range(100):
            a = rng.uniform(0, 2 * math.pi)
            r = (math.cos(a), math.sin(a))
            worst = max(worst, abs(theorems.rebit_expectation(phi, r) - math.cos(phi)))
    yield {"angles": 10, "vectors": 100}, worst


def structure_error_detected(u: Operator, program: StateVector, shape: RegisterShape) -> bool:
    try:
        theorems.extract_program_action(u, program, shape)
    except StructureError:
        return True
    return False


@check("theorems", 0.0, "eq")
def nonorthogonal_program_rejected(rng):
    u = gates.conditional([gates.pauli(0), gates.pauli(1)])
    plus = StateVector.normalized([1, 1], (2,))
    yield {"program": "plus"}, float(not structure_error_detected(u, plus, RegisterShape((2,))))
