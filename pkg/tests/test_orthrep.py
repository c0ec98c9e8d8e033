import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from roundelim.errors import DomainError
from roundelim.graphs import complete_graph, cycle_graph, gk_graph, hamming, hamming_graph
from roundelim.numerics import binom, entropy
from roundelim.orthrep import (
    MultilinearPoly,
    OrthRep,
    basis_rep,
    check,
    constant_rep,
    fourier_rep,
    gk_poly_rep,
    gk_poly_report,
    gk_polynomials,
    list_gamma_sq,
    list_inner_exact,
    list_rep,
    list_state,
    list_state_dim,
    padded_rep,
)
from roundelim.theta import dual_cert_from_orthrep, theta_complement_hamming


def pair_check(rep, n, dists):
    """Independent oracle: loop over every pair at the given distances."""
    worst = 0.0
    for x in range(1 << n):
        for y in range(x + 1, 1 << n):
            if hamming(x, y) in dists:
                worst = max(worst, abs(np.vdot(rep.vectors[x], rep.vectors[y])))
    return worst


def test_basis_and_constant():
    assert check(basis_rep(5), complete_graph(5)).passed
    r = check(constant_rep(4), cycle_graph(4))
    assert not r.passed
    assert r.max_edge_inner_product == pytest.approx(1.0)
    with pytest.raises(DomainError):
        check(basis_rep(3), complete_graph(4))


def test_fourier_n2_vectors():
    rep = fourier_rep(2)
    s = 1 / math.sqrt(2)
    assert np.allclose(rep.vectors[0b00], [s, s])
    assert np.allclose(rep.vectors[0b10], [s, -s])
    assert abs(rep.inner(0b00, 0b10)) < 1e-15


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_fourier_inner_product_identity(n):
    rep = fourier_rep(n)
    assert rep.dimension == n
    for x in range(1 << n):
        for y in (0, (1 << n) - 1, x ^ 1):
            assert rep.inner(x, y).real == pytest.approx(1 - 2 * hamming(x, y) / n, abs=1e-12)
    assert check(rep, hamming_graph(n, n // 2)).passed
    assert pair_check(rep, n, {n // 2}) < 1e-12


def test_fourier_parity():
    with pytest.raises(DomainError):
        fourier_rep(5)


@pytest.mark.parametrize("n, ell, dim", [(8, 0, 8), (10, 1, 32), (12, 2, 128), (8, 2, 64)])
def test_padded_rep(n, ell, dim):
    rep = padded_rep(n, ell)
    assert rep.dimension == dim == 4 ** ell * (n - 2 * ell)
    d = n // 2 - ell
    assert check(rep, hamming_graph(n, d)).passed
    if n <= 10:
        assert pair_check(rep, n, {d}) < 1e-12


def test_padded_degenerates_to_fourier():
    assert np.allclose(padded_rep(6, 0).vectors, fourier_rep(6).vectors)


def test_multilinear_reduction():
    n = 3
    s = MultilinearPoly.linear_sum(n)
    sq = s * s
    # (z1 + z2 + z3)^2 = 3 + 2(z1z2 + z1z3 + z2z3)
    assert sq.coeffs == {0: 3, 0b011: 2, 0b101: 2, 0b110: 2}
    for z in itertools.product((1, -1), repeat=n):
        assert sq(z) == sum(z) ** 2


@given(st.integers(1, 6), st.data())
def test_evaluations_match_pointwise(n, data):
    coeffs = data.draw(st.dictionaries(st.integers(0, (1 << n) - 1), st.integers(-5, 5), max_size=8))
    P = MultilinearPoly(n, coeffs)
    vals = P.evaluations()
    for w in range(1 << n):
        z = [-1 if w >> k & 1 else 1 for k in range(n)]
        assert vals[w] == P(z)


def gk_oracle_values(n):
    """P(z) evaluated straight from the product formula."""
    out = []
    for w in range(1 << n):
        s = n - 2 * bin(w).count("1")
        odd = -1 if bin(w).count("1") % 2 else 1
        pe = 1
        for k in range(n // 4 + 1):
            pe *= 4 * k + s
        out.append(pe * (1 + odd))
    return out


@pytest.mark.parametrize("n", [4, 8, 12])
def test_gk_polynomial_pointwise(n):
    pe, po = gk_polynomials(n)
    P = pe * po
    assert P.evaluations() == gk_oracle_values(n)
    for S, a in P.coeffs.items():
        assert a > 0


def test_gk_polynomial_n4_expansion():
    pe, po = gk_polynomials(4)
    ref = MultilinearPoly.linear_sum(4) * MultilinearPoly.linear_sum(4, 4)
    assert pe.coeffs == ref.coeffs
    assert po.coeffs == {0: 1, 0b1111: 1}


# mon counts frozen from the Walsh transform of the product-formula values
MON = {4: 16, 8: 186, 12: 1588, 16: 13770}


def mon_oracle(n):
    vals = gk_oracle_values(n)
    size = 1 << n
    nz = 0
    for S in range(size):
        total = sum(v * (-1 if bin(S & w).count("1") % 2 else 1) for w, v in enumerate(vals))
        nz += total != 0
    return nz


@pytest.mark.parametrize("n", [4, 8])
def test_gk_mon_count_oracle(n):
    assert mon_oracle(n) == MON[n]


@pytest.mark.parametrize("n", [4, 8, 12, 16])
def test_gk_report(n):
    _, r = gk_poly_report(n)
    assert r.mon_count == MON[n]
    assert r.exact_defect == 0
    # P = P_even + P_even * z_1...z_n; the halves share no monomial once
    # deg P_even = n/4 + 1 is below n/2
    if n // 4 + 1 < n - (n // 4 + 1):
        assert r.mon_count == 2 * r.mon_even
    assert r.mon_even <= r.slack_bound
    assert r.entropy_bound == pytest.approx(2 ** (entropy(0.25) * n + 1))
    assert r.slack_bound == sum(binom(n, k) for k in range(n // 4 + 2))
    assert r.within_slack_bound


def test_gk_entropy_bound_status():
    # n = 8 exceeds 2^{H(1/4) n + 1} = 179.8; larger n fit
    assert not gk_poly_report(8)[1].within_entropy_bound
    assert gk_poly_report(12)[1].within_entropy_bound
    assert gk_poly_report(16)[1].within_entropy_bound


@pytest.mark.parametrize("n", [4, 8])
def test_gk_rep_orthogonal(n):
    rep, r = gk_poly_rep(n)
    assert rep.dimension == r.mon_count
    assert check(rep, gk_graph(n)).passed
    assert pair_check(rep, n, set(range(n // 2, n + 1))) < 1e-9


def test_list_state_fourier_case():
    n, d = 4, 2
    assert list_gamma_sq(n, d) == 0
    v = list_state(0b0101, n, d)
    assert v[0] == 0
    assert np.allclose(v[4:8], np.array([-1, 1, -1, 1]) / 2)


def test_list_state_padding():
    n, d = 6, 4
    v = list_state(0, n, d)
    assert len(v) == list_state_dim(n) == 16
    assert np.all(v[1:8] == 0) and np.all(v[8 + n:] == 0)
    assert np.linalg.norm(v) == pytest.approx(1.0)


@pytest.mark.parametrize("n, d", [(4, 2), (4, 3), (6, 4), (8, 6), (8, 4), (5, 3)])
def test_list_inner_products(n, d):
    g2 = list_gamma_sq(n, d)
    for x in range(1 << n):
        for y in (0, x >> 1, (1 << n) - 1):
            dist = hamming(x, y)
            exact = list_inner_exact(n, d, dist)
            assert exact == g2 + (1 - g2) * (1 - Fraction(2 * dist, n))
            got = np.vdot(list_state(x, n, d), list_state(y, n, d))
            assert got.real == pytest.approx(float(exact), abs=1e-12)
            assert (exact == 0) == (dist == d)


def test_list_rep_n8_d6():
    rep = list_rep(8, 6)
    assert check(rep, hamming_graph(8, 6)).passed
    assert pair_check(rep, 8, {6}) < 1e-12


def test_list_state_domain():
    with pytest.raises(DomainError):
        list_state(0, 8, 3)


def test_json_roundtrip():
    rep = fourier_rep(4)
    back = OrthRep.from_json(rep.to_json())
    assert back.dimension == 4 and np.allclose(back.vectors, rep.vectors)


@pytest.mark.parametrize("make, graph", [
    (lambda: fourier_rep(4), lambda: hamming_graph(4, 2)),
    (lambda: fourier_rep(6), lambda: hamming_graph(6, 3)),
    (lambda: padded_rep(6, 1), lambda: hamming_graph(6, 2)),
    (lambda: list_rep(4, 3), lambda: hamming_graph(4, 3)),
    (lambda: gk_poly_rep(4)[0], lambda: gk_graph(4)),
    (lambda: basis_rep(5), lambda: complete_graph(5)),
])
def test_every_rep_gives_dual_certificate(make, graph):
    rep, G = make(), graph()
    cert = dual_cert_from_orthrep(rep, G)
    assert cert.kind == "dual"
    assert cert.value == pytest.approx(rep.dimension)


@pytest.mark.parametrize("n, d", [(4, 2), (6, 2), (6, 3), (8, 2), (8, 4), (10, 4), (12, 4)])
def test_sandwich(n, d):
    if d == n // 2:
        rep = fourier_rep(n)
    else:
        rep = padded_rep(n, n // 2 - d)
    assert check(rep, hamming_graph(n, d)).passed
    assert theta_complement_hamming(n, d) <= rep.dimension + 1e-9
