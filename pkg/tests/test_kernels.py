import math
import random

import pytest
from hypothesis import given, strategies as st

from roundelim import _kernels
from roundelim._kernels import fallback
from roundelim.graphs import Graph

compiled = _kernels.compiled
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled core not built")


def random_adj(n, p, seed):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return list(Graph.from_edges(n, edges).adj)


def brute_clique(adj, n):
    best = 0
    for mask in range(1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        if all(adj[u] >> v & 1 for u in vs for v in vs if u != v):
            best = max(best, len(vs))
    return best


def brute_chromatic(adj, n):
    for k in range(1, n + 1):
        def extend(i, cols):
            if i == n:
                return True
            for c in range(k):
                if all(cols[u] != c for u in range(i) if adj[i] >> u & 1):
                    cols.append(c)
                    if extend(i + 1, cols):
                        return True
                    cols.pop()
            return False
        if extend(0, []):
            return k
    return 0


@given(st.integers(1, 10), st.floats(0.0, 1.0), st.integers(0, 10**6))
def test_fallback_against_brute_force(n, p, seed):
    adj = random_adj(n, p, seed)
    size, mask = fallback.max_clique(adj, n)
    assert size == brute_clique(adj, n) == bin(mask).count("1")
    chi, colours = fallback.chromatic_number(adj, n)
    assert chi == brute_chromatic(adj, n)
    assert all(colours[u] != colours[v] for u in range(n) for v in range(n) if adj[u] >> v & 1)


@needs_compiled
@given(st.integers(1, 40), st.floats(0.0, 1.0), st.integers(0, 10**6))
def test_compiled_matches_fallback(n, p, seed):
    adj = random_adj(n, p, seed)
    assert compiled.max_clique(adj, n)[0] == fallback.max_clique(adj, n)[0]
    chi_c, col_c = compiled.chromatic_number(adj, n)
    chi_f, _ = fallback.chromatic_number(adj, n)
    assert chi_c == chi_f
    assert all(col_c[u] != col_c[v] for u in range(n) for v in range(n) if adj[u] >> v & 1)


@needs_compiled
@given(st.lists(st.floats(-5, 5, allow_nan=False), max_size=40), st.floats(-20, 20, allow_nan=False))
def test_compiled_tridiag_matches_fallback(offdiag, x):
    assert compiled.tridiag_max_eig(offdiag) == pytest.approx(fallback.tridiag_max_eig(offdiag), abs=1e-10)
    assert compiled.sturm_count(offdiag, x) == fallback.sturm_count(offdiag, x)


@needs_compiled
def test_compiled_rejects_large_graphs():
    with pytest.raises(ValueError):
        compiled.max_clique([0] * 65, 65)


def test_backend_name():
    assert _kernels.BACKEND in ("compiled", "python")
    assert (_kernels.BACKEND == "compiled") == (compiled is not None)


def test_dispatch_above_compiled_cap_uses_fallback():
    n = 70
    adj = [((1 << n) - 1) ^ (1 << v) for v in range(n)]
    assert _kernels.max_clique(adj, n)[0] == n
