import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from roundelim.errors import DomainError
from roundelim.graphs import hamming_graph
from roundelim.krawtchouk import (
    kraw,
    kraw_row,
    lambda_min_bound,
    lambda_min_index,
    orthogonality_defect,
    root_bracket,
    root_interval,
    smallest_root,
    spectrum,
)
from roundelim.numerics import binom, dense_sym_eigs


def kraw_by_generating_function(n, d, x):
    """Coefficient of t^d in (1 - t)^x (1 + t)^(n - x), by polynomial products."""
    poly = [1]
    for factor in [[1, -1]] * x + [[1, 1]] * (n - x):
        out = [0] * (len(poly) + 1)
        for i, a in enumerate(poly):
            out[i] += a * factor[0]
            out[i + 1] += a * factor[1]
        poly = out
    return poly[d]


def test_kraw_examples():
    assert kraw(4, 1, 1) == 2
    assert kraw(4, 2, 2) == -2
    for n in range(1, 9):
        for d in range(n + 1):
            assert kraw(n, d, 0) == binom(n, d)


def test_kraw_matches_generating_function():
    for n in range(1, 13):
        for d in range(n + 1):
            for x in range(n + 1):
                assert kraw(n, d, x) == kraw_by_generating_function(n, d, x)


def test_kraw_row_recurrence_matches_direct_sum():
    for n in range(1, 21):
        for d in range(n + 1):
            assert kraw_row(n, d) == [kraw(n, d, x) for x in range(n + 1)]


def test_kraw_domain():
    with pytest.raises(DomainError):
        kraw(4, 5, 0)
    with pytest.raises(DomainError):
        kraw(4, 1, -1)


@pytest.mark.parametrize("n", [2, 8, 16])
def test_orthogonality_defect_zero(n):
    assert orthogonality_defect(n) == 0


def test_orthogonality_defect_hand_case():
    # n = 2: rows (1,1,1), (2,0,-2), (1,-1,1) weighted by (1,2,1)
    w = [1, 2, 1]
    K = [[1, 1, 1], [2, 0, -2], [1, -1, 1]]
    for a in range(3):
        for b in range(3):
            s = sum(w[x] * K[a][x] * K[b][x] for x in range(3))
            assert s == (binom(2, a) * 4 if a == b else 0)


def test_spectrum_examples():
    S = spectrum(2, 1)
    assert S.distinct() == {-2: 1, 0: 2, 2: 1}
    S = spectrum(4, 2)
    assert (S.lambda_min, S.lambda_max) == (-2, 6)
    assert [ev for _, ev, _ in S.values] == [6, 0, -2, 0, 6]
    for n in range(1, 9):
        S = spectrum(n, n)
        assert [ev for _, ev, _ in S.values] == [(-1) ** x for x in range(n + 1)]
        assert S.lambda_min == -1


def test_spectrum_matches_dense_adjacency():
    for n in range(1, 9):
        for d in range(1, n + 1):
            A = hamming_graph(n, d).adjacency_matrix()
            dense = np.linalg.eigvalsh(A)
            assert np.max(np.abs(np.array(spectrum(n, d).eigenvalue_multiset()) - dense)) <= 1e-6


def test_spectrum_symmetry_for_even_parameters():
    for n in range(2, 21, 2):
        for d in range(0, n + 1, 2):
            row = kraw_row(n, d)
            assert row == row[::-1]


def test_spectrum_domain():
    with pytest.raises(DomainError):
        spectrum(4, 0)


def test_smallest_root_examples():
    for n in range(2, 20):
        assert smallest_root(n, 1) == pytest.approx(n / 2, abs=1e-12)
    assert smallest_root(4, 2) == pytest.approx(1.0, abs=1e-8)
    lo, hi = root_interval(8, 2)
    assert lo == pytest.approx(4 - math.sqrt(12))
    assert lo <= smallest_root(8, 2) <= hi


def _kraw_real(n, d, x):
    return mpmath.fsum((-1) ** j * mpmath.binomial(x, j) * mpmath.binomial(n - x, d - j) for j in range(d + 1))


def test_smallest_root_against_real_bisection_oracle():
    mpmath.mp.dps = 30
    for n in range(4, 25, 2):
        for d in range(1, n // 2):
            a, b = root_bracket(n, d)
            root = mpmath.findroot(lambda t: _kraw_real(n, d, t), (a, b), solver="anderson")
            assert smallest_root(n, d) == pytest.approx(float(root), abs=1e-8)


def test_root_interval_domain():
    with pytest.raises(DomainError):
        root_interval(8, 4)


def test_lambda_min_index_is_ceiling():
    for n in range(4, 41, 2):
        for d in range(2, n // 2, 2):
            assert lambda_min_index(n, d) == math.ceil(n / 2 - math.sqrt(d * (n - d)) - 1e-12)


@pytest.mark.parametrize("n,d", [(8, 2), (12, 4), (16, 4)])
def test_lambda_min_bound_contains_spectrum(n, d):
    bound = lambda_min_bound(n, d)
    assert abs(spectrum(n, d).lambda_min) <= bound


def test_lambda_min_bound_parity():
    with pytest.raises(DomainError):
        lambda_min_bound(8, 3)


@given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_three_term_identity(nd):
    n, d = nd
    if d == 0 or d == n:
        return
    for x in range(n + 1):
        lhs = (d + 1) * kraw(n, d + 1, x)
        rhs = (n - 2 * x) * kraw(n, d, x) - (n - d + 1) * kraw(n, d - 1, x)
        assert lhs == rhs
