"""Compile a few-qubit quantum protocol into a one-round classical one.

Each round the speaker applies an isometry from their private space to
(private space) x (fresh message register) and hands the message register
over.  Splitting every message register over its basis strings w writes the
final state as sum_u A_u(x) (x) B_u(y) with u ranging over all message
strings (Alice's and Bob's factors are kept unnormalised, so the scalars
alpha_u, beta_u live inside them).  Then

    p_j(x, y) = sum_{u,v} a_{u,v}(x) b^j_{u,v}(y),
    a_{u,v}(x) = <A_u(x)|A_v(x)>,   b^j_{u,v}(y) = <B_u(y)|M_j|B_v(y)>.

Alice sends every a_{u,v}(x) rounded to a fixed number of bits per real
and imaginary part; Bob evaluates the sum with his exact b's and picks the
outcome whose estimate exceeds 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from roundelim.errors import DomainError, InvariantError
from roundelim.qsim import diffusion_matrix, uniform

# act(input, private_vector) -> array of shape (new_private_dim, 2**qubits)
Isometry = Callable[[Any, np.ndarray], np.ndarray]
MAX_TOTAL_QUBITS = 6


@dataclass(frozen=True)
class QRound:
    speaker: str
    qubits: int
    act: Isometry


@dataclass(frozen=True)
class QuantumProtocolSpec:
    name: str
    rounds: tuple[QRound, ...]
    measurement: Callable[[Any, int], list[np.ndarray]]  # (y, bob_dim) -> [M_j]
    outcomes: tuple
    answer: Callable[[Any, Any], Any]  # reference function f(x, y)
    alice_dim: int = 1
    bob_dim: int = 1

    @property
    def total_qubits(self) -> int:
        return sum(r.qubits for r in self.rounds)


def _absorb(vec: np.ndarray, w: int, dim: int) -> np.ndarray:
    """|w> (x) vec with the message register as the leading factor."""
    e = np.zeros(dim, dtype=complex)
    e[w] = 1.0
    return np.kron(e, vec)


def decompose(spec: QuantumProtocolSpec, x, y) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Unnormalised factors A_u(x), B_u(y) over all message strings u, in
    lexicographic order of u."""
    A = [np.eye(spec.alice_dim, dtype=complex)[0]]
    B = [np.eye(spec.bob_dim, dtype=complex)[0]]
    for r in spec.rounds:
        m = 1 << r.qubits
        newA, newB = [], []
        for a, b in zip(A, B):
            if r.speaker == "A":
                out = np.asarray(r.act(x, a), dtype=complex)
                for w in range(m):
                    newA.append(out[:, w])
                    newB.append(_absorb(b, w, m))
            else:
                out = np.asarray(r.act(y, b), dtype=complex)
                for w in range(m):
                    newB.append(out[:, w])
                    newA.append(_absorb(a, w, m))
        A, B = newA, newB
    return A, B


def simulate(spec: QuantumProtocolSpec, x, y) -> np.ndarray:
    """Direct joint-state simulation: a matrix Psi[alice_index, bob_index]."""
    psi = np.zeros((spec.alice_dim, spec.bob_dim), dtype=complex)
    psi[0, 0] = 1.0
    for r in spec.rounds:
        m = 1 << r.qubits
        if r.speaker == "A":
            cols = [np.asarray(r.act(x, psi[:, j]), dtype=complex) for j in range(psi.shape[1])]
            T = np.stack(cols, axis=2)  # (alice', w, bob)
            psi = T.reshape(T.shape[0], m * psi.shape[1])
        else:
            rows = [np.asarray(r.act(y, psi[i, :]), dtype=complex) for i in range(psi.shape[0])]
            T = np.transpose(np.stack(rows, axis=0), (2, 0, 1))  # (w, alice, bob')
            psi = T.reshape(m * T.shape[1], T.shape[2])
        if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
            raise InvariantError("isometry-norm", f"round by {r.speaker}")
    return psi


def outcome_probabilities(spec: QuantumProtocolSpec, x, y) -> list[float]:
    psi = simulate(spec, x, y)
    Ms = spec.measurement(y, psi.shape[1])
    return [float(np.real(np.vdot(psi, psi @ M.T))) for M in Ms]


def gram_coefficients(A: Sequence[np.ndarray]) -> np.ndarray:
    M = np.array(A)
    return M.conj() @ M.T


def bob_coefficients(B: Sequence[np.ndarray], M: np.ndarray) -> np.ndarray:
    Bm = np.array(B)
    return Bm.conj() @ M @ Bm.T


def quantize(values: np.ndarray, bits: int) -> tuple[np.ndarray, np.ndarray]:
    """Round real and imaginary parts to the grid k / (2**(bits-1) - 1),
    |k| <= 2**(bits-1) - 1, which holds 0 and +-1 exactly.  Codes are
    offset to be nonnegative and fit in ``bits`` bits.  Returns (integer
    codes, decoded values)."""
    if bits < 2:
        raise DomainError(f"need at least 2 bits per part, got {bits}")
    levels = (1 << (bits - 1)) - 1

    def enc(v):
        return np.clip(np.rint(np.clip(v, -1.0, 1.0) * levels), -levels, levels).astype(np.int64)

    re, im = enc(values.real), enc(values.imag)
    decoded = (re + 1j * im) / levels
    return np.stack([re + levels, im + levels], axis=-1), decoded


@dataclass
class KremerReport:
    name: str
    ell: int
    precision_bits: int
    declared_bits: int
    message_bits: int
    message_bound: int
    max_deviation: float = 0.0
    max_quantization_error: float = 0.0
    max_decomposition_error: float = 0.0
    decisions_ok: bool = True
    rows: list[dict] = field(default_factory=list)

    @property
    def deviation_ok(self) -> bool:
        return self.max_deviation <= 0.125 + 1e-12

    @property
    def passed(self) -> bool:
        return self.deviation_ok and self.decisions_ok


def kremer_compile(spec: QuantumProtocolSpec, inputs: Sequence[tuple], precision_bits: int | None = None) -> KremerReport:
    """Build the classical one-round protocol and check it on ``inputs``.

    At the declared precision 2*ell + 4 a violated deviation bound or a
    wrong decision raises; at any other precision it is only reported.
    """
    ell = spec.total_qubits
    if ell > MAX_TOTAL_QUBITS:
        raise DomainError(f"{ell} qubits exceeds the supported {MAX_TOTAL_QUBITS}")
    declared = 2 * ell + 4
    bits = declared if precision_bits is None else precision_bits
    pairs = 1 << (2 * ell)
    report = KremerReport(
        spec.name, ell, bits, declared,
        message_bits=bits * 2 * pairs,
        message_bound=declared * 2 * pairs,
    )
    for x, y in inputs:
        A, B = decompose(spec, x, y)
        joint = sum(np.kron(a, b) for a, b in zip(A, B))
        direct = simulate(spec, x, y).reshape(-1)
        report.max_decomposition_error = max(report.max_decomposition_error,
                                             float(np.max(np.abs(joint - direct))))
        a = gram_coefficients(A)
        _, a_q = quantize(a, bits)
        report.max_quantization_error = max(report.max_quantization_error, float(np.max(np.abs(a_q - a))))
        Ms = spec.measurement(y, len(B[0]))
        p, p_q = [], []
        for M in Ms:
            b = bob_coefficients(B, M)
            p.append(float(np.real(np.sum(a * b))))
            p_q.append(float(np.real(np.sum(a_q * b))))
        dev = max(abs(u - v) for u, v in zip(p, p_q))
        report.max_deviation = max(report.max_deviation, dev)
        above = [j for j, v in enumerate(p_q) if v > 0.5]
        decision = spec.outcomes[above[0]] if len(above) == 1 else None
        truth = spec.answer(x, y)
        ok = decision == truth
        report.decisions_ok &= ok
        report.rows.append({"x": x, "y": y, "p": p, "p_tilde": p_q, "decision": decision, "expected": truth, "ok": ok})
    if report.max_decomposition_error > 1e-9:
        raise InvariantError("yao-kremer-decomposition", f"error {report.max_decomposition_error:.3e}")
    if bits == declared:
        bound = 2.0 ** (-(2 * ell + 3))
        if report.max_quantization_error > bound + 1e-15:
            raise InvariantError("quantization", f"{report.max_quantization_error} > {bound}")
        if not report.passed:
            raise InvariantError("kremer-deviation", f"deviation {report.max_deviation}, decisions ok {report.decisions_ok}")
    return report


# ---- fixtures ---------------------------------------------------------------

def _complete_unitary(first_column: np.ndarray) -> np.ndarray:
    """A unitary whose first column is the given unit vector (via QR)."""
    v = np.asarray(first_column, dtype=complex)
    m = len(v)
    M = np.eye(m, dtype=complex)
    M[:, 0] = v
    # make the remaining columns independent of v
    k = int(np.argmax(np.abs(v)))
    if k != 0:
        M[:, k] = np.eye(m)[:, 0]
    Q, R = np.linalg.qr(M)
    Q[:, 0] *= R[0, 0] / abs(R[0, 0])
    if not np.allclose(Q[:, 0], v, atol=1e-12):
        raise AssertionError("unitary completion lost the first column")
    return Q


def _equality_measurement(states: Callable[[Any], np.ndarray]):
    def measure(y, dim):
        v = states(y)
        P = np.outer(v, v.conj())
        return [P, np.eye(dim) - P]

    return measure


def basis_equality_spec(nbits: int = 2) -> QuantumProtocolSpec:
    """One round: Alice sends |x>; Bob projects onto |y>."""
    m = 1 << nbits

    def send(x, priv):
        out = np.zeros((1, m), dtype=complex)
        out[0, x] = priv[0]
        return out

    return QuantumProtocolSpec(
        "basis-eq", (QRound("A", nbits, send),),
        _equality_measurement(lambda y: np.eye(m, dtype=complex)[y]),
        (True, False), lambda x, y: x == y,
    )


def fourier_equality_spec(n: int = 4) -> QuantumProtocolSpec:
    """One round for EQ-(n, n/2): Alice sends n^{-1/2} sum_i (-1)^{x_i}|i>
    through a unitary whose first column is that state."""
    q = (n - 1).bit_length()
    m = 1 << q

    def state(v):
        s = np.zeros(m, dtype=complex)
        for i in range(n):
            s[i] = (-1.0 if v >> i & 1 else 1.0) / math.sqrt(n)
        return s

    def send(x, priv):
        U = _complete_unitary(state(x))
        return (U @ np.eye(m)[0])[None, :] * priv[0]

    return QuantumProtocolSpec(
        f"fourier-eq({n})", (QRound("A", q, send),),
        _equality_measurement(state),
        (True, False), lambda x, y: x == y,
    )


def eq_two_round_spec(n: int = 4) -> QuantumProtocolSpec:
    """The two-round Grover protocol with its final measurement deferred:
    Alice writes (i, x_i) into a fresh message register instead of
    measuring; Bob projects onto sum_i |i, y_i><i, y_i|."""
    q = (n - 1).bit_length()
    m = 1 << q
    G = diffusion_matrix(n, m)

    def bob_first(y, priv):
        # Bob keeps nothing: private dim 1, message U_y|s>
        s = uniform(n, m)
        s[:n] *= np.array([-1.0 if y >> i & 1 else 1.0 for i in range(n)])
        return (priv[0] * s).reshape(1, m)

    def alice_second(x, priv):
        signs = np.ones(m)
        signs[:n] = [-1.0 if x >> i & 1 else 1.0 for i in range(n)]
        v = G @ (signs * priv)
        out = np.zeros((m, 2 * m), dtype=complex)
        for i in range(m):
            bit = x >> i & 1 if i < n else 0
            out[i, 2 * i + bit] = v[i]
        return out

    def measure(y, dim):
        proj = np.zeros(dim)
        for i in range(m):
            bit = y >> i & 1 if i < n else 0
            proj[2 * i + bit] = 1.0
        P = np.diag(proj).astype(complex)
        return [P, np.eye(dim) - P]

    return QuantumProtocolSpec(
        f"eq2({n})",
        (QRound("B", q, bob_first), QRound("A", q + 1, alice_second)),
        measure, (True, False), lambda x, y: x == y,
    )
