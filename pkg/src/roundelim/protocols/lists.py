"""List problems: Bob holds a list L, Alice holds x in L, Bob must learn x.

The quantum protocols handle lists whose members are pairwise at one
Hamming distance d >= n/2; they use states phi_x that are orthogonal
exactly at distance d, so Bob can measure in the basis {phi_w : w in L}.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from roundelim.errors import DomainError
from roundelim.graphs import hamming, hamming_graph, clique_containing
from roundelim.numerics import ceil_log2
from roundelim.orthrep import list_gamma_sq, list_state
from roundelim.protocols.run import ProtocolRun
from roundelim.qsim import (
    StateVector,
    apply_controlled_query,
    apply_dft,
    apply_list_prep,
    apply_unitary,
    measure_branches,
    measure_in_basis,
)

H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
X_GATE = np.array([[0, 1], [1, 0]], dtype=complex)
Z_GATE = np.array([[1, 0], [0, -1]], dtype=complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
EPR = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


def list_distance(L: Sequence[int], n: int) -> int:
    """The common pairwise distance of an equidistant list."""
    if len(L) < 2:
        raise DomainError("need at least two list members to read off a distance")
    dists = {hamming(u, v) for i, u in enumerate(L) for v in L[i + 1:]}
    if len(dists) != 1:
        raise DomainError(f"list is not equidistant: distances {sorted(dists)}")
    d = dists.pop()
    if not (n <= 2 * d <= 2 * n):
        raise DomainError(f"list distance {d} is below n/2 = {n / 2}")
    return d


def _validate(x: int, L: Sequence[int], n: int, d: int | None) -> tuple[list[int], int]:
    L = list(dict.fromkeys(L))
    if x not in L:
        raise DomainError("x is not in the list")
    if any(not 0 <= w < 1 << n for w in L):
        raise DomainError(f"list members must be {n}-bit strings")
    if len(L) == 1:
        if d is None:
            d = n
    else:
        d0 = list_distance(L, n)
        if d is not None and d != d0:
            raise DomainError(f"list distance {d0} differs from declared d={d}")
        d = d0
    return L, d


def equidistant_list(n: int, d: int, x: int = 0, limit: int | None = None) -> list[int]:
    """A large set of strings containing x, pairwise at distance d.

    Found by bounded clique search in H(n, d); not necessarily maximal.
    """
    G = hamming_graph(n, d)
    return sorted(clique_containing(G.adj, x, limit))


def list_two_round(x: int, L: Sequence[int], n: int) -> ProtocolRun:
    """Bob sends one qubit gamma|0> + sqrt(1 - gamma^2)|1> with
    gamma^2 = 1 - n/(2d); Alice prepares the uniform index register under
    the control qubit, applies her controlled query and sends both
    registers (ceil(log n) + 1 qubits).  Bob measures in {phi_w : w in L}.
    """
    L, d = _validate(x, L, n, None)
    lg = ceil_log2(n)
    g2 = list_gamma_sq(n, d)
    run = ProtocolRun("list2", n, d, {"x": x, "L": list(L)}, x)
    qubit = np.array([math.sqrt(g2), math.sqrt(1 - g2)], dtype=complex)
    st = StateVector([("c", 2)], qubit)
    run.send("B", qubits=1, note="control qubit")
    st = st.add_register("i", np.eye(1 << lg, dtype=complex)[0])
    st = apply_list_prep(st, "c", "i", n)
    st = apply_controlled_query(st, x, "c", "i", n)
    st.check_norm()
    run.send("A", qubits=lg + 1, note="phi_x")
    basis = [list_state(w, n, d) for w in L]
    for idx, p in measure_in_basis(st, basis, ["c", "i"]):
        run.branch(f"w={idx}", p, L[idx] if idx >= 0 else None)
    return run


def entangled_state(w: int, n: int, d: int) -> np.ndarray:
    """gamma|0> n^{-1/2} sum_i |i> + sqrt(1 - gamma^2)|1> n^{-1/2} sum_i (-1)^{w_i}|i>."""
    g2 = list_gamma_sq(n, d)
    g, h = math.sqrt(g2), math.sqrt(1 - g2)
    signs = np.array([-1.0 if w >> i & 1 else 1.0 for i in range(n)])
    return np.concatenate([g * np.ones(n), h * signs]).astype(complex) / math.sqrt(n)


def remote_prepare_real(theta: float) -> list[tuple[int, float, np.ndarray]]:
    """Prepare cos(theta)|0> + sin(theta)|1> on the receiver's half of an
    EPR pair with one classical bit.

    The sender measures their half in {psi, psi_perp}; for real psi the
    receiver then holds psi or psi_perp, and the rotation [[0, -1], [1, 0]]
    maps psi_perp to -psi.  Returns (bit, probability, receiver state).
    """
    psi = np.array([math.cos(theta), math.sin(theta)], dtype=complex)
    perp = np.array([-math.sin(theta), math.cos(theta)], dtype=complex)
    fix = np.array([[0, -1], [1, 0]], dtype=complex)
    pair = EPR.reshape(2, 2)  # [sender, receiver]
    out = []
    for bit, m in enumerate((psi, perp)):
        rec = m.conj() @ pair
        p = float(np.vdot(rec, rec).real)
        rec = rec / math.sqrt(p)
        if bit:
            rec = fix @ rec
        out.append((bit, p, rec))
    return out


def teleport(qubit_state: StateVector, qubit: str, epr_a: str, epr_b: str) -> list[tuple[int, float, StateVector]]:
    """Standard teleportation of register ``qubit`` onto ``epr_b``.

    Returns (two-bit message, probability, corrected state) for each of
    the four Bell outcomes; the sender's registers are left collapsed.
    """
    st = apply_unitary(qubit_state, CNOT, [qubit, epr_a])
    st = apply_unitary(st, H, qubit)
    out = []
    for b1 in measure_branches(st, qubit):
        for b2 in measure_branches(b1.state, epr_a):
            fixed = b2.state
            if b2.outcome:
                fixed = apply_unitary(fixed, X_GATE, epr_b)
            if b1.outcome:
                fixed = apply_unitary(fixed, Z_GATE, epr_b)
            out.append((2 * b1.outcome + b2.outcome, b1.probability * b2.probability, fixed))
    return out


def list_entangled(x: int, L: Sequence[int], n: int) -> ProtocolRun:
    """Entanglement-assisted version with classical messages only.

    Shared: n^{-1/2} sum_i |i>_A |i>_B and two EPR pairs.  Bob prepares the
    control qubit on Alice's side by remote state preparation (1 bit).
    Alice applies her controlled query and F_n on her index, measures j and
    sends it (ceil(log n) bits), then teleports the control qubit (2 bits).
    Bob undoes the phase omega^{ij} and measures in {psi_w : w in L}.
    """
    L, d = _validate(x, L, n, None)
    lg = ceil_log2(n)
    g2 = list_gamma_sq(n, d)
    theta = math.atan2(math.sqrt(1 - g2), math.sqrt(g2))
    run = ProtocolRun("list-ent", n, d, {"x": x, "L": list(L)}, x)
    shared = (np.eye(n, dtype=complex) / math.sqrt(n)).reshape(-1)
    basis = [entangled_state(w, n, d) for w in L]
    omega = np.exp(2j * math.pi / n)

    run.send("B", cbits=1, note="remote state preparation bit")
    run.send("A", cbits=lg + 2, note="index j and teleportation bits")
    for rsp_bit, p_rsp, ctrl in remote_prepare_real(theta):
        st = StateVector.product([("c", ctrl), ("ab", shared), ("ea", EPR)])
        st = StateVector(
            [("c", 2), ("ia", n), ("ib", n), ("ea", 2), ("eb", 2)],
            st.amps.reshape(2, n, n, 2, 2),
        )
        st = apply_controlled_query(st, x, "c", "ia", n)
        st = apply_dft(st, "ia")
        for jb in measure_branches(st, "ia"):
            j = jb.outcome
            for tbits, p_tel, tst in teleport(jb.state, "c", "ea", "eb"):
                correction = np.diag(omega ** (-(np.arange(n) * j)))
                bst = apply_unitary(tst, correction, "ib")
                prob = p_rsp * jb.probability * p_tel
                for idx, p in measure_in_basis(bst, basis, ["eb", "ib"]):
                    run.branch(f"rsp={rsp_bit},j={j},tel={tbits},w={idx}", prob * p,
                               L[idx] if idx >= 0 else None)
    return run


def nonsignaling_box(i: int, omega: int) -> dict[tuple[int, int], Fraction]:
    """P(a, b | i) = 1/omega on pairs (a, a + i mod omega)."""
    return {(a, (a + i) % omega): Fraction(1, omega) for a in range(omega)}


def box_marginals_uniform(omega: int) -> bool:
    """Both marginals are uniform for every Alice input, hence independent
    of the other party's input (no signalling)."""
    target = Fraction(1, omega)
    for i in range(omega):
        P = nonsignaling_box(i, omega)
        alice = [sum((p for (a, _), p in P.items() if a == k), Fraction(0)) for k in range(omega)]
        bob = [sum((p for (_, b), p in P.items() if b == k), Fraction(0)) for k in range(omega)]
        if any(v != target for v in alice + bob) or sum(P.values()) != 1:
            return False
    return True


def list_nonsignaling(x, L: Sequence, omega: int | None = None) -> ProtocolRun:
    """Alice feeds her element's label i to the box and sends her output a
    (ceil(log omega) bits); Bob reads b = a + i from his side and recovers
    i = b - a."""
    L = list(dict.fromkeys(L))
    if x not in L:
        raise DomainError("x is not in the list")
    omega = len(L) if omega is None else omega
    if omega < len(L):
        raise DomainError(f"omega = {omega} is smaller than the list")
    i = L.index(x)
    run = ProtocolRun("list-ns", 0, None, {"x": x, "L": list(L), "omega": omega}, x)
    run.send("A", cbits=ceil_log2(omega), note="box output a")
    for (a, b), p in sorted(nonsignaling_box(i, omega).items()):
        label = (b - a) % omega
        run.branch(f"a={a}", float(p), L[label] if label < len(L) else None)
    run.extra["marginals_uniform"] = box_marginals_uniform(omega)
    return run
