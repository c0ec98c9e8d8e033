import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from roundelim.bounds import (
    SetFamily,
    bound_formulas,
    cover_free_check,
    dyachkov_rykov,
    entropy_gap,
    kleitman_bound,
    kleitman_check,
    transcripts_to_family,
)
from roundelim.errors import DomainError, InvariantError
from roundelim.numerics import entropy
from roundelim.protocols import classical


def brute_cover_free(members, r):
    """Oracle straight from the definition, over frozensets."""
    for i, F0 in enumerate(members):
        others = [F for j, F in enumerate(members) if j != i]
        for combo in itertools.combinations(others, r):
            if F0 <= frozenset().union(*combo):
                return False
    return True


def test_cover_free_examples():
    assert cover_free_check(SetFamily.of([{1}, {2}, {3}]), 1) == (True, None)
    ok, witness = cover_free_check(SetFamily.of([{1}, {1, 2}], labels=["a", "b"]), 1)
    assert not ok and witness == ("a", "b")
    with pytest.raises(DomainError):
        cover_free_check(SetFamily.of([{1}]), 1)
    with pytest.raises(DomainError):
        cover_free_check(SetFamily.of([{i} for i in range(21)]), 1)
    with pytest.raises(DomainError):
        SetFamily((1,), ("a",), (frozenset({2}),))


@given(st.lists(st.frozensets(st.integers(0, 6), max_size=4), min_size=3, max_size=8), st.integers(1, 2))
def test_cover_free_matches_definition(members, r):
    F = SetFamily.of(members)
    ok, witness = cover_free_check(F, r)
    assert ok == brute_cover_free(list(F.members), r)
    if not ok:
        i0, *rest = witness
        assert F.members[i0] <= frozenset().union(*(F.members[j] for j in rest))


def test_announce_family():
    lists = classical.k_subsets(4, 2)
    F = transcripts_to_family(classical.announce_protocol(4), lists)
    assert len(F) == 4 and F.distinct_count == 4
    assert all(len(S) == 1 for S in F.members)
    assert len(set().union(*F.members)) == 4


@pytest.mark.parametrize("N, k", [(4, 2), (5, 2), (5, 3), (6, 2), (6, 3)])
def test_transcript_families_cover_free(N, k):
    lists = classical.k_subsets(N, k)
    for P in (classical.announce_protocol(N), classical.hashing_protocol(N, k)):
        F = transcripts_to_family(P, lists)
        assert len(F) == N and F.distinct_count == N
        assert cover_free_check(F, k - 1)[0]
        assert brute_cover_free(list(F.members), k - 1)


def test_transcripts_reject_wrong_protocol():
    P = classical.ClassicalProtocol(
        "guess-min", (classical.Round("B", 1, lambda L, t: 0),), lambda L, t: min(L))
    with pytest.raises(DomainError):
        transcripts_to_family(P, classical.k_subsets(4, 2))


def test_bound_formulas_example():
    rep = bound_formulas(2 ** 16, 16)
    assert rep.row("two-round-hashing-upper").value == pytest.approx(20)
    assert rep.row("one-way-classical-lower").value == pytest.approx(4)
    assert rep.row("four-round-upper").value == pytest.approx(4 + 8 + 6 + 7)
    lk = math.log2(15)
    assert rep.row("list-lower").value == pytest.approx(4 + 2 * lk - math.log2(lk) - 1)
    assert rep.row("cover-free-transcripts").value == pytest.approx(15 ** 2 * 16 / lk)
    rows = rep.to_rows()
    assert {r["bound"] for r in rows} >= {"quantum-lower", "cover-free-bits-lower"}
    assert all(r["N"] == 2 ** 16 and "constants" in r for r in rows)


def test_bound_k2_term_vanishes():
    rep = bound_formulas(2 ** 8, 2)
    assert rep.row("list-lower").value == pytest.approx(math.log2(8) - 1)
    with pytest.raises(StopIteration):
        rep.row("cover-free-transcripts")


def test_bound_ordering_grid():
    for N in [2 ** e for e in (2, 4, 6, 8, 12, 16, 20, 24, 32, 64)]:
        for k in (2, 3, 4, 5, 8, 16, 32, 64, 128, 256):
            if k > N:
                continue
            rep = bound_formulas(N, k)
            mx = max(rep.row("one-way-classical-lower").value, rep.row("quantum-lower").value)
            assert mx <= rep.row("four-round-upper").value


def test_bound_domain_and_constants():
    with pytest.raises(DomainError):
        bound_formulas(4, 5)
    with pytest.raises(DomainError):
        bound_formulas(16, 4, c=0)
    rep = bound_formulas(2 ** 16, 16, c=2.0, slack=3.0)
    assert rep.row("cover-free-transcripts").constants == {"c": 2.0}
    assert rep.row("list-lower").constants == {"slack": 3.0}
    assert dyachkov_rykov(100, 4, 1.0) == pytest.approx(16 * math.log2(100) / 2)
    with pytest.raises(InvariantError):
        bound_formulas(2 ** 16, 16, slack=100.0)


def kleitman_oracle(n, r):
    """Largest diameter-2r set by exhaustive search over subsets (n <= 4)."""
    pts = range(1 << n)
    best = 1
    for mask in range(1, 1 << (1 << n)):
        S = [p for p in pts if mask >> p & 1]
        if len(S) > best and all(bin(a ^ b).count("1") <= 2 * r for a in S for b in S):
            best = len(S)
    return best


@pytest.mark.parametrize("n, r", [(3, 1), (4, 1)])
def test_kleitman_exhaustive_oracle(n, r):
    rep = kleitman_check(n, r)
    assert rep.exhaustive and rep.largest_found == kleitman_oracle(n, r) == kleitman_bound(n, r)


@pytest.mark.parametrize("n, r, expect", [(4, 1, 5), (6, 2, 22), (5, 0, 1)])
def test_kleitman_small(n, r, expect):
    rep = kleitman_check(n, r)
    assert rep.bound == expect and rep.holds
    assert rep.largest_found <= rep.bound


@pytest.mark.parametrize("n, r", [(10, 3), (12, 5), (14, 6)])
def test_kleitman_witnesses(n, r):
    rep = kleitman_check(n, r, samples=5, seed=1)
    assert not rep.exhaustive
    assert rep.ball_size == rep.bound and rep.ball_diameter <= 2 * r
    assert max(rep.greedy_sizes) <= rep.bound


def test_kleitman_domain():
    with pytest.raises(DomainError):
        kleitman_check(15, 2)
    with pytest.raises(DomainError):
        kleitman_check(6, 3)


def test_entropy_gap():
    mpmath.mp.dps = 40

    def H(p):
        p = mpmath.mpf(p)
        return -p * mpmath.log(p, 2) - (1 - p) * mpmath.log(1 - p, 2)

    p = mpmath.mpf(1) / 4
    oracle = H(p) + H(mpmath.mpf(1) / 2 - mpmath.sqrt((1 - p) * p)) - 1
    assert entropy_gap(0.25) == pytest.approx(float(oracle), abs=1e-12)
    assert entropy_gap(0.25) == pytest.approx(0.165857027124, abs=1e-11)
    grid = np.linspace(0.001, 0.499, 10 ** 4)
    assert all(entropy_gap(float(q)) > 0 for q in grid)
    assert entropy_gap(1e-9) < entropy_gap(1e-6) < entropy_gap(1e-3)
    with pytest.raises(DomainError):
        entropy_gap(0.5)


def test_entropy_quadratic_lower_bound():
    for p in np.linspace(0, 1, 10 ** 4):
        gap = entropy(float(p)) - (1 - (1 - 2 * p) ** 2)
        assert gap >= -1e-12
    for p in (0.0, 0.5, 1.0):
        assert abs(entropy(p) - (1 - (1 - 2 * p) ** 2)) <= 1e-12
