import itertools
import math
import random

import numpy as np
import pytest

from roundelim.errors import DomainError, PromiseViolation
from roundelim.graphs import hamming
from roundelim.numerics import ceil_log2
from roundelim.protocols import classical, kremer
from roundelim.protocols.equality import (
    EQUAL,
    NOT_EQUAL,
    eq_multiround,
    eq_padded,
    eq_two_round,
    multiround_cost,
    multiround_starter,
)
from roundelim.protocols.lists import (
    box_marginals_uniform,
    equidistant_list,
    list_entangled,
    list_nonsignaling,
    list_two_round,
    nonsignaling_box,
    remote_prepare_real,
    teleport,
)
from roundelim.qsim import StateVector, exact_grover_params


def weight_d_strings(n, d):
    return [sum(1 << i for i in c) for c in itertools.combinations(range(n), d)]


# ---- equality ---------------------------------------------------------------

def test_eq2_equal_inputs_n8():
    for x in range(256):
        run = eq_two_round(x, x, 8)
        assert run.correct and run.outcome == EQUAL


def test_eq2_branches_land_on_differences():
    x, y = 0b10110010, 0b10010011
    run = eq_two_round(x, y, 8)
    assert run.correct and run.outcome == NOT_EQUAL
    diff = [i for i in range(8) if (x ^ y) >> i & 1]
    assert sorted(int(b.split("=")[1]) for b, _, _ in run.branches) == diff
    assert all(p == pytest.approx(0.5, abs=1e-12) for _, p, _ in run.branches)


def test_eq2_n16_all_displacements():
    for z in weight_d_strings(16, 4):
        run = eq_two_round(0, z, 16)
        assert run.correct
        assert run.qubits_sent == 2 * 4 + 1 and run.rounds == 2


@pytest.mark.parametrize("n", [8, 12, 16, 24, 32])
def test_eq2_costs(n):
    run = eq_two_round(0, (1 << (n // 4)) - 1, n)
    assert run.qubits_sent == 2 * ceil_log2(n) + 1
    assert run.rounds == 2


def test_eq2_promise_violation():
    with pytest.raises(PromiseViolation):
        eq_two_round(0, 0b111, 8)
    with pytest.raises(DomainError):
        eq_two_round(0, 0, 6)


def test_eq2_shift_invariance():
    # dist and the branch probabilities depend only on x xor y
    rng = random.Random(1)
    for _ in range(30):
        z = rng.choice(weight_d_strings(8, 2))
        u = rng.randrange(256)
        a, b = eq_two_round(0, z, 8), eq_two_round(u, u ^ z, 8)
        assert [(i, p) for i, p, _ in a.branches] == [(i, p) for i, p, _ in b.branches]


def test_eq_padded():
    n, d = 12, 4
    for z in weight_d_strings(n, d):
        run = eq_padded(0, z, n, d)
        assert run.correct and run.outcome == NOT_EQUAL
        assert run.qubits_sent <= run.extra["qubit_bound"]
    assert eq_padded(5, 5, n, d).outcome == EQUAL
    base, padded = eq_two_round(3, 3 ^ 0b11, 8), eq_padded(3, 3 ^ 0b11, 8, 2)
    assert base.branches == padded.branches
    with pytest.raises(DomainError):
        eq_padded(0, 0, 8, 3)


def test_eq_multiround_n16_d2():
    p = exact_grover_params(16, 2)
    assert p.ell == 2
    run = eq_multiround(0, 0, 16, 2)
    assert run.correct
    for z in weight_d_strings(16, 2):
        run = eq_multiround(0, z, 16, 2)
        assert run.correct
        assert run.rounds == p.ell + 2
        assert run.qubits_sent == multiround_cost(16, p.ell) == (p.ell + 2) * 4 + 3


def test_eq_multiround_n32_random():
    rng = random.Random(0)
    for _ in range(200):
        x = rng.getrandbits(32)
        z = sum(1 << i for i in rng.sample(range(32), 2))
        assert eq_multiround(x, x ^ z, 32, 2).correct
    for _ in range(20):
        x = rng.getrandbits(32)
        assert eq_multiround(x, x, 32, 2).outcome == EQUAL


def test_multiround_starter_leaves_state_with_alice():
    for ell in range(1, 8):
        # ell - 1 plain messages, each handing the state to the other party
        holder = multiround_starter(ell)
        for _ in range(ell - 1):
            holder = "A" if holder == "B" else "B"
        assert holder == "A"


def test_eq_multiround_domain():
    with pytest.raises(DomainError):
        eq_multiround(0, 0, 16, 4)
    with pytest.raises(PromiseViolation):
        eq_multiround(0, 1, 16, 2)


# ---- lists --------------------------------------------------------------------

def test_list2_h42_clique():
    L = equidistant_list(4, 2, 0b0110)
    assert len(L) == 4 and all(hamming(u, v) == 2 for u, v in itertools.combinations(L, 2))
    for x in L:
        run = list_two_round(x, L, 4)
        assert run.correct and run.outcome == x
        assert run.qubits_sent == ceil_log2(4) + 2 and run.rounds == 2


def test_list2_antipodal():
    for n in (2, 3, 5, 8):
        x = 0b101 & ((1 << n) - 1)
        L = [x, x ^ ((1 << n) - 1)]
        assert list_two_round(x, L, n).outcome == x


def test_list2_equidistant_pairs_and_triples():
    # three strings pairwise at distance 6 need 18 > 2 * 8 differing coordinates,
    # so at n = 8 only pairs exist; triples are taken at n = 12, d = 8
    rng = random.Random(3)
    for _ in range(20):
        x = rng.getrandbits(8)
        y = x ^ sum(1 << i for i in rng.sample(range(8), 6))
        assert list_two_round(y, [x, y], 8).outcome == y
    L = equidistant_list(12, 8, 0, limit=3)
    assert len(L) == 3
    for x in L:
        assert list_two_round(x, L, 12).correct


def test_list2_rejects_bad_lists():
    with pytest.raises(DomainError):
        list_two_round(0, [1, 2], 4)
    with pytest.raises(DomainError):
        list_two_round(0, [0, 1, 3], 4)
    with pytest.raises(DomainError):
        list_two_round(0, [0, 1], 4)  # distance 1 < n/2


def test_teleportation_fidelity():
    rng = np.random.default_rng(5)
    epr = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    for _ in range(10):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        st = StateVector([("q", 2), ("ea", 2), ("eb", 2)], np.kron(v, epr))
        branches = teleport(st, "q", "ea", "eb")
        assert len(branches) == 4
        assert sum(p for _, p, _ in branches) == pytest.approx(1.0)
        for _, p, out in branches:
            assert p == pytest.approx(0.25)
            rho_b = np.moveaxis(out.amps, 2, 0).reshape(2, -1)
            fid = np.real(np.vdot(v, rho_b @ rho_b.conj().T @ v))
            assert fid == pytest.approx(1.0, abs=1e-12)


def test_remote_state_preparation():
    for theta in np.linspace(0, math.pi / 2, 7):
        target = np.array([math.cos(theta), math.sin(theta)])
        outs = remote_prepare_real(theta)
        assert sum(p for _, p, _ in outs) == pytest.approx(1.0)
        for _, _, rec in outs:
            assert abs(np.vdot(target, rec)) == pytest.approx(1.0, abs=1e-12)


def test_list_entangled_h42():
    L = equidistant_list(4, 2, 0)
    for x in L:
        run = list_entangled(x, L, 4)
        assert run.correct and run.outcome == x
        assert run.cbits_sent == ceil_log2(4) + 3 and run.qubits_sent == 0
        js = {b.split(",")[1] for b, _, _ in run.branches}
        assert js == {f"j={j}" for j in range(4)}


def test_list_entangled_antipodal():
    assert list_entangled(0b0101, [0b0101, 0b1010], 4).outcome == 0b0101


def test_list_entangled_n6():
    L = equidistant_list(6, 4, 0)
    for x in L:
        assert list_entangled(x, L, 6).correct


def test_list_nonsignaling():
    run = list_nonsignaling("a", ["a"])
    assert run.outcome == "a" and run.cbits_sent == 0
    items = ["p", "q", "r", "s"]
    for perm in itertools.permutations(items):
        for x in perm:
            run = list_nonsignaling(x, list(perm))
            assert run.correct and len(run.branches) == 4
            assert run.cbits_sent == 2
    assert box_marginals_uniform(4) and box_marginals_uniform(5)
    assert sum(nonsignaling_box(2, 4).values()) == 1
    with pytest.raises(DomainError):
        list_nonsignaling("z", items)


# ---- classical collapse --------------------------------------------------------

def test_collapse_fixtures():
    for P, promise in classical.equality_fixtures():
        assert classical.first_error(P, promise) is None
        Q = classical.round_collapse(P, promise)
        assert len(Q.rounds) == 1
        assert Q.transcript_length <= P.transcript_length
        for x, y in promise:
            assert Q.run(x, y)[1] == (x == y)


def test_collapse_one_round_unchanged():
    P, promise = classical.colouring_protocol()
    Q = classical.round_collapse(P, promise)
    for x, y in promise:
        assert Q.run(x, y)[1] == P.run(x, y)[1]


def test_collapse_rejects_wrong_protocol():
    P, promise = classical.broken_protocol()
    assert classical.first_error(P, promise) is not None
    with pytest.raises(DomainError):
        classical.round_collapse(P, promise)


def test_list_protocol_fixtures():
    lists = classical.k_subsets(6, 3)
    for P in (classical.announce_protocol(6), classical.hashing_protocol(6, 3)):
        assert classical.check_list_protocol(P, lists) is None


# ---- compiling to one classical round ------------------------------------------

def kremer_cases():
    return {
        "basis": (kremer.basis_equality_spec(), [(x, y) for x in range(4) for y in range(4)]),
        "fourier": (kremer.fourier_equality_spec(4),
                    [(x, y) for x in range(16) for y in range(16) if hamming(x, y) in (0, 2)]),
        "eq2": (kremer.eq_two_round_spec(4),
                [(x, y) for x in range(16) for y in range(16) if hamming(x, y) in (0, 1)]),
    }


def test_kremer_basis_exact():
    spec, inputs = kremer_cases()["basis"]
    r = kremer.kremer_compile(spec, inputs)
    assert r.max_deviation == 0.0 and r.decisions_ok and r.passed


@pytest.mark.parametrize("name", ["fourier", "eq2"])
def test_kremer_declared_precision(name):
    spec, inputs = kremer_cases()[name]
    r = kremer.kremer_compile(spec, inputs)
    assert r.precision_bits == 2 * r.ell + 4
    assert r.max_deviation <= 1 / 8 and r.decisions_ok
    assert r.max_quantization_error <= 2.0 ** -(2 * r.ell + 3)
    assert r.message_bits <= (2 * r.ell + 4) * 2 * 4 ** r.ell


def test_kremer_eq2_probabilities_match_protocol():
    spec, inputs = kremer_cases()["eq2"]
    assert spec.total_qubits == 2 * ceil_log2(4) + 1
    r = kremer.kremer_compile(spec, inputs)
    for row in r.rows:
        run = eq_two_round(row["x"], row["y"], 4)
        p_equal = sum(p for _, p, out in run.branches if out == EQUAL)
        assert row["p"][0] == pytest.approx(p_equal, abs=1e-12)


def test_kremer_coarse_precision_flagged():
    spec, inputs = kremer_cases()["eq2"]
    flagged = []
    for bits in range(2, 2 * spec.total_qubits + 4):
        r = kremer.kremer_compile(spec, inputs, bits)  # reports, never raises
        if r.max_deviation > 1 / 8:
            assert not r.passed
            flagged.append(bits)
    assert flagged and max(flagged) < 2 * spec.total_qubits + 1


def test_kremer_quantize_grid():
    codes, dec = kremer.quantize(np.array([0.0, 1.0, -1.0, 0.3 + 0.2j]), 4)
    assert dec[0] == 0 and dec[1] == 1 and dec[2] == -1
    assert np.all((codes >= 0) & (codes < 16))
    assert abs(dec[3] - (0.3 + 0.2j)) <= math.sqrt(2) / 14
    with pytest.raises(DomainError):
        kremer.quantize(np.zeros(1), 1)


def test_kremer_size_cap():
    spec = kremer.eq_two_round_spec(16)
    with pytest.raises(DomainError):
        kremer.kremer_compile(spec, [(0, 0)])
