import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from roundelim.errors import DomainError, InvariantError
from roundelim.qsim import (
    StateVector,
    apply_controlled_query,
    apply_dft,
    apply_diffusion,
    apply_list_prep,
    apply_param_diffusion,
    apply_phase_bit_query,
    apply_phase_query,
    apply_query,
    apply_unitary,
    apply_xor_query,
    dft_matrix,
    diffusion_matrix,
    exact_grover_params,
    grover_iterations,
    measure_branches,
    measure_in_basis,
    param_diffusion_matrix,
    run_exact_grover,
    uniform,
)


def random_state(rng, registers):
    shape = [d for _, d in registers]
    v = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return StateVector(registers, v / np.linalg.norm(v))


def bits_of(z, n):
    return [(z >> i) & 1 for i in range(n)]


def test_query_zero_is_identity():
    rng = np.random.default_rng(0)
    st_ = random_state(rng, [("i", 8)])
    assert np.allclose(apply_query(st_, 0, "i").vector, st_.vector)


def test_query_by_definition():
    rng = np.random.default_rng(1)
    st_ = random_state(rng, [("a", 3), ("i", 6)])
    z = 0b101100
    out = apply_query(st_, z, "i")
    expect = st_.amps * np.array([(-1) ** b for b in bits_of(z, 6)])[None, :]
    assert np.allclose(out.amps, expect)


def test_diffusion_fixes_uniform():
    st_ = StateVector([("i", 7)], uniform(7))
    assert np.allclose(apply_diffusion(st_, "i").vector, st_.vector)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 12])
def test_gate_matrices_unitary(n):
    for U in (diffusion_matrix(n), dft_matrix(n), param_diffusion_matrix(0.7, n), diffusion_matrix(n, n + 3)):
        assert np.allclose(U @ U.conj().T, np.eye(len(U)), atol=1e-12)


def test_param_diffusion_at_pi_is_minus_grover():
    assert np.allclose(param_diffusion_matrix(math.pi, 6), -diffusion_matrix(6))


def test_dft_against_numpy():
    n = 6
    F = dft_matrix(n)
    # numpy's ifft uses e^{+2 pi i jk / n} / n
    ref = np.fft.ifft(np.eye(n), axis=0) * math.sqrt(n)
    assert np.allclose(F, ref)


@given(st.integers(2, 10), st.integers(0, 10**6))
def test_dft_roundtrip_and_norm(n, seed):
    rng = np.random.default_rng(seed)
    s = random_state(rng, [("a", 2), ("i", n)])
    t = apply_dft(apply_dft(s, "i"), "i", inverse=True)
    assert np.allclose(t.vector, s.vector, atol=1e-10)
    for gate in (
        lambda v: apply_query(v, seed % (1 << n), "i"),
        lambda v: apply_diffusion(v, "i"),
        lambda v: apply_phase_query(v, seed % (1 << n), 0.3, "i"),
        lambda v: apply_param_diffusion(v, 1.1, "i"),
        lambda v: apply_dft(v, "i"),
        lambda v: apply_controlled_query(v, seed % (1 << n), "a", "i"),
        lambda v: apply_list_prep(v, "a", "i", n),
    ):
        assert abs(gate(s).norm() - 1.0) <= 1e-12


def test_cond_ops_identity_n8():
    rng = np.random.default_rng(7)
    n, varphi = 8, 0.913
    for _ in range(10):
        x, y = rng.integers(0, 256, size=2)
        psi = random_state(rng, [("j", n)])
        s = psi.add_register("b", [1, 0])
        lhs = apply_xor_query(apply_phase_bit_query(apply_xor_query(s, x, "j", "b"), y, varphi, "j", "b"), x, "j", "b")
        rhs = apply_phase_query(psi, int(x) ^ int(y), varphi, "j").add_register("b", [1, 0])
        assert np.allclose(lhs.vector, rhs.vector, atol=1e-12)


@given(st.integers(1, 10), st.integers(0, 2**10 - 1), st.integers(0, 2**10 - 1), st.integers(0, 10**6))
def test_query_commutation(n, x, y, seed):
    x &= (1 << n) - 1
    y &= (1 << n) - 1
    s = random_state(np.random.default_rng(seed), [("i", n)])
    z = apply_query(s, x ^ y, "i")
    assert np.allclose(z.vector, apply_query(apply_query(s, x, "i"), y, "i").vector)
    assert np.allclose(z.vector, apply_query(apply_query(s, y, "i"), x, "i").vector)


def test_list_prep_and_controlled_query():
    n = 5
    s = StateVector.basis([("c", 2), ("i", 8)], [1, 0])
    out = apply_list_prep(s, "c", "i", n)
    expect = np.zeros((2, 8), dtype=complex)
    expect[1, :n] = 1 / math.sqrt(n)
    assert np.allclose(out.amps, expect)
    s0 = StateVector.basis([("c", 2), ("i", 8)], [0, 0])
    assert np.allclose(apply_list_prep(s0, "c", "i", n).vector, s0.vector)
    q = apply_controlled_query(out, 0b00110, "c", "i", n)
    assert np.allclose(q.amps[1, :n], np.array([1, -1, -1, 1, 1]) / math.sqrt(n))


def test_dimension_mismatch():
    s = StateVector([("i", 4)])
    with pytest.raises(DomainError):
        apply_unitary(s, np.eye(3), "i")
    with pytest.raises(DomainError):
        apply_query(s, [0, 1, 0], "i")
    with pytest.raises(DomainError):
        apply_xor_query(s.add_register("b", [1, 0, 0]), 1, "i", "b")
    with pytest.raises(DomainError):
        StateVector([("a", 2), ("a", 2)])


def test_apply_unitary_register_order():
    rng = np.random.default_rng(3)
    s = random_state(rng, [("a", 2), ("b", 3)])
    U = np.kron(np.eye(3), np.array([[0, 1], [1, 0]]))
    out = apply_unitary(s, U, ["b", "a"])
    assert np.allclose(out.amps, s.amps[::-1, :])


def test_measure_branches():
    b = measure_branches(StateVector.basis([("i", 4)], [2]), "i")
    assert [(x.outcome, x.probability) for x in b] == [(2, 1.0)]
    b = measure_branches(StateVector([("i", 4)], uniform(4)), "i")
    assert [x.outcome for x in b] == [0, 1, 2, 3]
    assert all(x.probability == pytest.approx(0.25) for x in b)
    for x in b:
        assert x.state.norm() == pytest.approx(1.0)
    bad = StateVector([("i", 2)], [1, 1])
    with pytest.raises(InvariantError):
        measure_branches(bad, "i")


def test_measure_in_basis():
    s = StateVector([("i", 4)], uniform(4))
    out = measure_in_basis(s, [uniform(4)], ["i"])
    assert out == [(0, pytest.approx(1.0))]
    with pytest.raises(InvariantError):
        measure_in_basis(s, [uniform(4), uniform(4)], ["i"])


@pytest.mark.parametrize("n, d, ell", [(4, 1, 1), (8, 2, 1), (12, 3, 1), (32, 8, 1), (16, 2, 2)])
def test_grover_iterations(n, d, ell):
    assert grover_iterations(n, d) == ell


def test_grover_iterations_oracle():
    for n in range(1, 40):
        for d in range(1, n):
            val = math.pi / (4 * math.asin(math.sqrt(d / n))) - 0.5
            expect = round(val) if abs(val - round(val)) < 1e-9 else math.ceil(val)
            assert grover_iterations(n, d) == expect


def test_post_grover_branches_n8():
    n, z = 8, 0b00100100
    st_ = StateVector([("i", n)], uniform(n))
    st_ = apply_diffusion(apply_query(st_, z, "i"), "i")
    b = measure_branches(st_, "i")
    assert sorted(x.outcome for x in b) == [2, 5]
    assert all(x.probability == pytest.approx(0.5, abs=1e-12) for x in b)


def test_exact_grover_all_small():
    rng = random.Random(0)
    for n in range(1, 33):
        for d in range(1, n + 1):
            p = exact_grover_params(n, d)
            assert p.ell == grover_iterations(n, d)
            zs = [(1 << d) - 1] + [sum(1 << i for i in rng.sample(range(n), d)) for _ in range(10)]
            for z in zs:
                st_ = run_exact_grover(n, z, p)
                marked = np.array(bits_of(z, n), dtype=bool)
                assert float(np.sum(np.abs(st_.amps[marked]) ** 2)) >= 1 - 1e-9
