# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Sturm bisection, bitset clique and colouring search.

Same algorithms and return conventions as ``_fallback``; graphs are limited
to 64 vertices so a neighbourhood fits one ``uint64``.
"""

from libc.stdint cimport uint64_t
from libc.math cimport fabs
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

MAX_VERTICES = 64


cdef int _sturm(double* b, int m, double x) nogil:
    cdef int count = 0
    cdef int i
    cdef double q = -x
    for i in range(m):
        if i > 0:
            if q == 0.0:
                q = -1e-300
            q = -x - b[i - 1] * b[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def sturm_count(offdiag, double x):
    cdef int m = len(offdiag) + 1
    cdef double* b = <double*> malloc(max(m - 1, 1) * sizeof(double))
    cdef int i
    try:
        for i in range(m - 1):
            b[i] = offdiag[i]
        return _sturm(b, m, x)
    finally:
        free(b)


def tridiag_max_eig(offdiag, double tol=1e-13):
    cdef int m = len(offdiag) + 1
    if m == 1:
        return 0.0
    cdef double* b = <double*> malloc((m - 1) * sizeof(double))
    cdef int i
    cdef double radius = 0.0, left, right, lo, hi, mid, eps
    try:
        for i in range(m - 1):
            b[i] = offdiag[i]
        for i in range(m):
            left = fabs(b[i - 1]) if i > 0 else 0.0
            right = fabs(b[i]) if i < m - 1 else 0.0
            if left + right > radius:
                radius = left + right
        lo = -radius - 1.0
        hi = radius + 1.0
        eps = tol * (radius if radius > 1.0 else 1.0)
        with nogil:
            while hi - lo > eps:
                mid = 0.5 * (lo + hi)
                if mid == lo or mid == hi:
                    break
                if _sturm(b, m, mid) == m:
                    hi = mid
                else:
                    lo = mid
        return 0.5 * (lo + hi)
    finally:
        free(b)


cdef int _load(adj, int n, uint64_t* out) except -1:
    cdef int v
    if n > 64:
        raise ValueError("compiled kernels handle at most 64 vertices")
    for v in range(n):
        out[v] = <uint64_t> adj[v]
    return 0


cdef int _color_order(uint64_t* adj, uint64_t cand, int* order, int* bounds) nogil:
    cdef uint64_t uncolored = cand, avail, low
    cdef int color = 0, k = 0, v
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            low = avail & (~avail + 1)
            v = __builtin_ctzll(avail)
            avail &= ~low
            avail &= ~adj[v]
            uncolored &= ~low
            order[k] = v
            bounds[k] = color
            k += 1
    return k


cdef void _expand(uint64_t* adj, int size, uint64_t clique, uint64_t cand,
                  int* best, uint64_t* best_mask) nogil:
    cdef int order[64]
    cdef int bounds[64]
    cdef int k = _color_order(adj, cand, order, bounds)
    cdef int idx, v
    cdef uint64_t bit, new_cand
    idx = k - 1
    while idx >= 0:
        if size + bounds[idx] <= best[0]:
            return
        v = order[idx]
        bit = (<uint64_t> 1) << v
        new_cand = cand & adj[v]
        if new_cand:
            _expand(adj, size + 1, clique | bit, new_cand, best, best_mask)
        elif size + 1 > best[0]:
            best[0] = size + 1
            best_mask[0] = clique | bit
        cand &= ~bit
        idx -= 1


def max_clique(adj, int n):
    cdef uint64_t a[64]
    cdef int best = 0
    cdef uint64_t best_mask = 0
    cdef uint64_t full
    _load(adj, n, a)
    if n == 0:
        return 0, 0
    full = (~(<uint64_t> 0)) if n == 64 else (((<uint64_t> 1) << n) - 1)
    with nogil:
        _expand(a, 0, 0, full, &best, &best_mask)
    return best, int(best_mask)


cdef struct ColorState:
    int n
    int lower
    int best
    uint64_t* adj
    int* degree
    int* colors
    int* best_colors
    uint64_t* classes


cdef int _search(ColorState* st, int colored, int used) nogil:
    cdef int n = st.n
    cdef int v, c, sat, best_v = -1, best_sat = -1, best_deg = -1
    cdef int done, new_used
    cdef uint64_t bit
    if colored == n:
        st.best = used
        for v in range(n):
            st.best_colors[v] = st.colors[v]
        return 1 if st.best <= st.lower else 0
    for v in range(n):
        if st.colors[v] >= 0:
            continue
        sat = 0
        for c in range(used):
            if st.adj[v] & st.classes[c]:
                sat += 1
        if sat > best_sat or (sat == best_sat and st.degree[v] > best_deg):
            best_v = v
            best_sat = sat
            best_deg = st.degree[v]
    v = best_v
    bit = (<uint64_t> 1) << v
    for c in range(used + 1):
        new_used = used if used > c + 1 else c + 1
        if new_used >= st.best:
            break
        if st.adj[v] & st.classes[c]:
            continue
        st.colors[v] = c
        st.classes[c] |= bit
        done = _search(st, colored + 1, new_used)
        st.classes[c] &= ~bit
        st.colors[v] = -1
        if done:
            return 1
    return 0


def chromatic_number(adj, int n, int lower=0):
    from roundelim._kernels._fallback import _dsatur_greedy

    if n == 0:
        return 0, []
    greedy = _dsatur_greedy([int(x) for x in adj], n)
    cdef int ub = max(greedy) + 1
    if ub <= lower:
        return ub, greedy
    cdef uint64_t a[64]
    cdef uint64_t classes[64]
    cdef int degree[64]
    cdef int colors[64]
    cdef int best_colors[64]
    cdef ColorState st
    cdef int v
    _load(adj, n, a)
    for v in range(n):
        degree[v] = __builtin_popcountll(a[v])
        colors[v] = -1
        best_colors[v] = greedy[v]
        classes[v] = 0
    st.n = n
    st.lower = lower
    st.best = ub
    st.adj = a
    st.degree = degree
    st.colors = colors
    st.best_colors = best_colors
    st.classes = classes
    with nogil:
        _search(&st, 0, 0)
    return st.best, [best_colors[v] for v in range(n)]
