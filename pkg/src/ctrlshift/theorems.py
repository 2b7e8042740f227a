"""Numerical checks of the structural results about programmable networks."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractError, StructureError
from .gates import pauli
from .linalg import (
    VALIDATION_TOL,
    Operator,
    RegisterShape,
    StateVector,
    commutator,
    expi_hermitian,
)

PRODUCT_TOL = 1e-8


class NonUnitaryWarning(UserWarning):
    pass


# --- program orthogonality ---------------------------------------------------


def _split(vec: np.ndarray, first: int, second: int) -> np.ndarray:
    return vec.reshape(first, second)


def extract_program_action(
    u: Operator,
    program: StateVector,
    data_shape: RegisterShape,
    *,
    program_first: bool = True,
    tol: float = PRODUCT_TOL,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Factor U(|P>|i>) = |P'> (x) u_P|i> over the data basis |i>.

    Returns ``(u_P matrix, |P'> amplitudes, violation)``.  The violation is
    the largest distance of an output from ``|P'> (x) (something)`` with a
    single, data-independent ``|P'>``; above ``tol`` a StructureError is
    raised.
    """
    p, n = program.dim, data_shape.total_dim
    if u.dim != p * n:
        raise ContractError(f"operator of dim {u.dim} does not act on {p}x{n}")
    outs = []
    for i in range(n):
        e = np.zeros(n, dtype=complex)
        e[i] = 1
        inp = np.kron(program.amps, e) if program_first else np.kron(e, program.amps)
        out = u.matrix @ inp
        # rows index the program factor
        outs.append(_split(out, p, n) if program_first else _split(out, n, p).T)
    # one program factor for all data states: dominant left singular vector
    stacked = np.concatenate(outs, axis=1)
    left, _, _ = np.linalg.svd(stacked)
    p_out = left[:, 0]
    # data images under that factor, then the residual of the product form
    u_p = np.stack([p_out.conj() @ o for o in outs], axis=1)
    violation = max(
        float(np.linalg.norm(o - np.outer(p_out, u_p[:, i]))) for i, o in enumerate(outs)
    )
    if violation > tol:
        raise StructureError(
            f"output is not a product with a data-independent program (violation {violation:.3g})",
            violation,
        )
    return u_p, p_out, violation


def product_structure_violation(
    u: Operator, program: StateVector, data_shape: RegisterShape, *, program_first: bool = True
) -> float:
    """Same factorization as extract_program_action, but returns the violation."""
    try:
        return extract_program_action(
            u, program, data_shape, program_first=program_first, tol=math.inf
        )[2]
    except StructureError as exc:  # pragma: no cover - tol is infinite
        return exc.violation


@dataclass(frozen=True)
class OrthogonalityReport:
    overlap_pp: complex
    residuals: tuple[float, ...]
    max_violation: float


def program_orthogonality_check(
    u: Operator,
    programs: tuple[StateVector, StateVector],
    data_samples: Sequence[StateVector],
    *,
    program_first: bool = True,
) -> OrthogonalityReport:
    """Compare <P|X> with <D|u_P^dag u_X|D> <P'|X'> for each data sample."""
    if not data_samples:
        raise ContractError("need at least one data sample")
    data_shape = data_samples[0].shape
    prog_p, prog_x = programs
    u_p, p_out, _ = extract_program_action(u, prog_p, data_shape, program_first=program_first)
    u_x, x_out, _ = extract_program_action(u, prog_x, data_shape, program_first=program_first)
    pp = complex(np.vdot(prog_p.amps, prog_x.amps))
    outs = complex(np.vdot(p_out, x_out))
    residuals = []
    for d in data_samples:
        if d.shape != data_shape:
            raise ContractError("data samples have different shapes")
        rhs = np.vdot(u_p @ d.amps, u_x @ d.amps) * outs
        residuals.append(float(abs(pp - rhs)))
    return OrthogonalityReport(pp, tuple(residuals), max(residuals))


def output_independence_check(
    u: Operator,
    program: StateVector,
    data_pair: tuple[StateVector, StateVector],
    *,
    program_first: bool = True,
) -> float:
    """Distance between the program outputs for two non-orthogonal data states.

    Each output is reduced to its dominant program factor; the two factors are
    phase-aligned before taking the norm of their difference.
    """
    d1, d2 = data_pair
    if abs(np.vdot(d1.amps, d2.amps)) <= VALIDATION_TOL:
        raise ContractError("data states are orthogonal; the argument needs <D1|D2> != 0")
    p, n = program.dim, d1.dim
    factors = []
    for d in (d1, d2):
        inp = np.kron(program.amps, d.amps) if program_first else np.kron(d.amps, program.amps)
        out = u.matrix @ inp
        mat = _split(out, p, n) if program_first else _split(out, n, p).T
        left, _, _ = np.linalg.svd(mat)
        factors.append(left[:, 0])
    a, b = factors
    phase = np.vdot(b, a)
    if abs(phase) > 0:
        b = b * phase / abs(phase)
    return float(np.linalg.norm(a - b))


# --- non-unitary programming -------------------------------------------------


def matrix_mult_operator(n: int) -> Operator:
    """M: |k>|i>|j> -> delta_jk |i>|0>|0> on three N-level sites."""
    if n < 2:
        raise ContractError(f"N must be >= 2, got {n}")
    shape = RegisterShape((n, n, n))
    m = np.zeros((n**3, n**3), dtype=complex)
    for k in range(n):
        for i in range(n):
            m[i * n * n, k * n * n + i * n + k] = 1
    return Operator(m, shape)


def program_vector(a: Operator) -> np.ndarray:
    """|A> = sum_ij A_ij |i>|j> (unnormalized)."""
    return np.asarray(a.matrix).reshape(-1)


def apply_programming_operator(psi: StateVector, a: Operator) -> tuple[np.ndarray, float]:
    """M(|psi>|A>), returned as a raw vector with its norm."""
    n = psi.dim
    if a.dim != n:
        raise ContractError(f"operator of dim {a.dim} does not act on a {n}-dim state")
    out = matrix_mult_operator(n).matrix @ np.kron(psi.amps, program_vector(a))
    return out, float(np.linalg.norm(out))


def operator_state_norm(u: Operator) -> float:
    return float(np.linalg.norm(u.matrix) / math.sqrt(u.dim))


def encode_operator_state(u: Operator) -> StateVector:
    """|U> = N^{-1/2} sum_j |j> (U|j>).

    A non-unitary ``u`` gives a vector whose norm is not 1; a
    NonUnitaryWarning reports that norm and the normalized state is returned.
    """
    n = u.dim
    # component (j, i) is U_ij, i.e. the transpose flattened
    vec = np.asarray(u.matrix).T.reshape(-1) / math.sqrt(n)
    shape = u.shape + u.shape
    if not u.is_unitary:
        norm = float(np.linalg.norm(vec))
        warnings.warn(f"operator is not unitary; encoded norm is {norm:.6g}", NonUnitaryWarning)
        return StateVector.normalized(vec, shape)
    return StateVector(vec, shape)


def programming_map(n: int) -> Operator:
    """Linear map L with L(|psi>|U>) = (U|psi>)|0,0> for the normalized encoding.

    M expects sum_ij U_ij |i>|j> while the normalized encoding stores
    N^{-1/2} sum_ij U_ij |j>|i>, so L = sqrt(N) M (1 (x) SWAP).
    """
    swap = np.zeros((n * n, n * n))
    for a in range(n):
        for b in range(n):
            swap[b * n + a, a * n + b] = 1
    m = matrix_mult_operator(n).matrix
    return Operator(math.sqrt(n) * m @ np.kron(np.eye(n), swap), (n, n, n))


BELL_OUTCOMES = ("phi+", "psi+", "psi-", "phi-")


def bell_state(outcome: str) -> np.ndarray:
    s = math.sqrt(2) / 2
    table = {
        "phi+": [s, 0, 0, s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
        "phi-": [s, 0, 0, -s],
    }
    try:
        return np.array(table[outcome], dtype=complex)
    except KeyError:
        raise ContractError(f"outcome must be one of {BELL_OUTCOMES}, got {outcome!r}") from None


def bell_project(psi: StateVector, u: Operator, outcome: str) -> tuple[float, StateVector]:
    """Project qubits 1-2 of |psi>|U> onto a Bell state.

    Returns the branch probability and the normalized state left on qubit 3.
    """
    if psi.dim != 2 or u.dim != 2:
        raise ContractError("bell_project works on one qubit")
    bell = bell_state(outcome)
    joint = np.kron(psi.amps, encode_operator_state(u).amps).reshape(4, 2)
    branch = bell.conj() @ joint
    prob = float(np.vdot(branch, branch).real)
    return prob, StateVector.normalized(branch, (2,))


def bell_expansion(psi: StateVector, u: Operator) -> np.ndarray:
    """The four-term Bell expansion of |psi>|U> written out term by term."""
    um = u.matrix
    terms = [
        ("phi+", um @ psi.amps),
        ("psi+", um @ pauli(1).matrix @ psi.amps),
        ("psi-", 1j * um @ pauli(2).matrix @ psi.amps),
        ("phi-", um @ pauli(3).matrix @ psi.amps),
    ]
    return 0.5 * sum(np.kron(bell_state(name), v) for name, v in terms)


@dataclass(frozen=True)
class ResidueReport:
    residue: Operator
    identity_residual: float
    nonunitarity: float


def residue_decomposition(
    g: Operator, l_map: Operator, samples: Sequence[np.ndarray] = ()
) -> ResidueReport:
    """R = G - L, with the residual of G x = L x + R x over ``samples``."""
    if g.dim != l_map.dim:
        raise ContractError("G and L act on different spaces")
    r = g.matrix - l_map.matrix
    resid = 0.0
    for x in samples:
        resid = max(resid, float(np.linalg.norm(g.matrix @ x - (l_map.matrix @ x + r @ x))))
    lm = l_map.matrix
    nonunit = float(np.linalg.norm(lm.conj().T @ lm - np.eye(lm.shape[0])))
    return ResidueReport(Operator(r, g.shape), resid, nonunit)


# --- universality ------------------------------------------------------------


@dataclass(frozen=True)
class LieClosureReport:
    generator_count: int
    closure_dimension: int
    depth_reached: int


def _traceless_real_vector(h: np.ndarray) -> np.ndarray:
    n = h.shape[0]
    h = h - np.trace(h) / n * np.eye(n)
    return np.concatenate([h.real.ravel(), h.imag.ravel()])


def _unit(h: np.ndarray) -> np.ndarray | None:
    # brackets are rescaled so the span tolerance stays relative
    n = h.shape[0]
    h = h - np.trace(h) / n * np.eye(n)
    norm = np.linalg.norm(h)
    return None if norm <= 1e-12 else h / norm


class _Span:
    """Orthonormal basis of a real span, grown by Gram-Schmidt."""

    def __init__(self, tol: float = 1e-9):
        self.basis = np.zeros((0, 0))
        self.tol = tol

    def __len__(self) -> int:
        return self.basis.shape[0]

    def add(self, v: np.ndarray) -> bool:
        if len(self):
            # two projection passes for stability
            v = v - self.basis.T @ (self.basis @ v)
            v = v - self.basis.T @ (self.basis @ v)
        norm = np.linalg.norm(v)
        if norm <= self.tol:
            return False
        row = (v / norm)[None, :]
        self.basis = row if not len(self) else np.vstack([self.basis, row])
        return True


def lie_closure_dimension(generators: Sequence[Operator], max_depth: int = 10) -> LieClosureReport:
    """Dimension of the real Lie algebra generated by i[., .] brackets.

    Identity components are dropped, so n qubits saturate at 4^n - 1.
    Each round brackets every newly found element with every element kept so
    far; ``depth_reached`` counts rounds until a round adds nothing.
    """
    if not generators:
        raise ContractError("no generators given")
    shape = generators[0].shape
    for g in generators:
        if g.shape != shape or not g.is_hermitian:
            raise ContractError("generators must be Hermitian operators of one shape")
    span = _Span()
    elements: list[np.ndarray] = []
    for g in generators:
        m = _unit(g.matrix)
        if m is not None and span.add(_traceless_real_vector(m)):
            elements.append(m)
    frontier = list(elements)
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        fresh = []
        # bracket each new element with everything kept so far
        for a in frontier:
            for b in list(elements):
                c = _unit(1j * (a @ b - b @ a))
                if c is not None and span.add(_traceless_real_vector(c)):
                    fresh.append(c)
                    elements.append(c)
        frontier = fresh
    return LieClosureReport(len(generators), len(span), depth)


# --- product formulas --------------------------------------------------------


def product_formula_error(h1: Operator, h2: Operator, tau: float) -> tuple[float, float]:
    """Errors of the sum and commutator product formulas at step ``tau``.

    Gates are U = exp(-i H tau).  Returns
    ``(||U1 U2 - exp(-i (H1+H2) tau)||, ||U1 U2 U1^-1 U2^-1 - exp(-[H1,H2] tau^2)||)``.
    """
    if h1.shape != h2.shape:
        raise ContractError("Hamiltonians have different shapes")
    u1 = expi_hermitian(h1, -tau).matrix
    u2 = expi_hermitian(h2, -tau).matrix
    total = Operator(h1.matrix + h2.matrix, h1.shape)
    err_sum = float(np.linalg.norm(u1 @ u2 - expi_hermitian(total, -tau).matrix))
    # -[H1,H2] tau^2 = i (i[H1,H2]) tau^2 with i[H1,H2] Hermitian
    ic = Operator(1j * commutator(h1, h2).matrix, h1.shape)
    group = u1 @ u2 @ u1.conj().T @ u2.conj().T
    err_comm = float(np.linalg.norm(group - expi_hermitian(ic, tau**2).matrix))
    return err_sum, err_comm


def empirical_order(taus: Sequence[float], errors: Sequence[float]) -> float:
    """Slope of log(error) against log(tau)."""
    slope, _ = np.polyfit(np.log(taus), np.log(errors), 1)
    return float(slope)


# --- rebits ------------------------------------------------------------------


def rebit_expectation(phi: float, r: Sequence[float]) -> float:
    """<R|u(phi)|R> for the plane rotation by ``phi``."""
    r = np.asarray(r, dtype=float)
    if r.shape != (2,) or abs(np.linalg.norm(r) - 1) > VALIDATION_TOL:
        raise ContractError("r must be a unit vector in the plane")
    c, s = math.cos(phi), math.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    return float(r @ rot @ r)

