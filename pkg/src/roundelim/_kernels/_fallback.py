"""Pure-Python versions of the hot kernels.

Graphs are passed as a list of neighbour bitmasks (``adj[v]`` has bit ``u``
set iff ``u ~ v``).  Python ints make these work for any vertex count; the
compiled core is limited to 64 vertices.
"""

from __future__ import annotations

from typing import Sequence


def sturm_count(offdiag: Sequence[float], x: float) -> int:
    """Number of eigenvalues strictly below ``x`` of the zero-diagonal
    symmetric tridiagonal matrix with the given off-diagonal."""
    m = len(offdiag) + 1
    count = 0
    q = -x
    tiny = 1e-300
    for i in range(m):
        if i > 0:
            if q == 0.0:
                q = -tiny
            q = -x - offdiag[i - 1] * offdiag[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def tridiag_max_eig(offdiag: Sequence[float], tol: float = 1e-13) -> float:
    m = len(offdiag) + 1
    if m == 1:
        return 0.0
    radius = 0.0
    for i in range(m):
        left = abs(offdiag[i - 1]) if i > 0 else 0.0
        right = abs(offdiag[i]) if i < m - 1 else 0.0
        radius = max(radius, left + right)
    lo, hi = -radius - 1.0, radius + 1.0
    eps = tol * max(1.0, radius)
    while hi - lo > eps:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if sturm_count(offdiag, mid) == m:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _color_order(adj: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy colouring of ``cand``; vertices come back in non-decreasing
    colour order with their colour number (1-based) as the clique bound."""
    order: list[int] = []
    bounds: list[int] = []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~low
            avail &= ~adj[v]
            uncolored &= ~low
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique(adj: Sequence[int], n: int) -> tuple[int, int]:
    """Maximum clique by branch and bound with a greedy colouring bound.

    Returns ``(size, mask)``.
    """
    best = [0, 0]

    def expand(size: int, clique: int, cand: int) -> None:
        order, bounds = _color_order(adj, cand)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best[0]:
                return
            v = order[idx]
            bit = 1 << v
            new_clique = clique | bit
            new_cand = cand & adj[v]
            if new_cand:
                expand(size + 1, new_clique, new_cand)
            elif size + 1 > best[0]:
                best[0] = size + 1
                best[1] = new_clique
            cand &= ~bit

    if n:
        expand(0, 0, (1 << n) - 1)
    return best[0], best[1]


def _dsatur_greedy(adj: Sequence[int], n: int) -> list[int]:
    colors = [-1] * n
    classes: list[int] = []
    for _ in range(n):
        best_v, best_sat, best_deg = -1, -1, -1
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = sum(1 for c in classes if adj[v] & c)
            deg = _popcount(adj[v])
            if sat > best_sat or (sat == best_sat and deg > best_deg):
                best_v, best_sat, best_deg = v, sat, deg
        v = best_v
        for c, members in enumerate(classes):
            if not adj[v] & members:
                colors[v] = c
                classes[c] |= 1 << v
                break
        else:
            colors[v] = len(classes)
            classes.append(1 << v)
    return colors


def chromatic_number(adj: Sequence[int], n: int, lower: int = 0) -> tuple[int, list[int]]:
    """Exact chromatic number by DSATUR branch and bound.

    ``lower`` is a known lower bound (a clique size); the search stops as
    soon as a colouring with that many colours is found.
    Returns ``(chi, colouring)``.
    """
    if n == 0:
        return 0, []
    best_colors = _dsatur_greedy(adj, n)
    best = [max(best_colors) + 1, best_colors]
    if best[0] <= lower:
        return best[0], best[1]
    degree = [_popcount(adj[v]) for v in range(n)]
    colors = [-1] * n
    classes = [0] * n

    def search(colored: int, used: int) -> bool:
        if colored == n:
            best[0] = used
            best[1] = colors[:]
            return best[0] <= lower
        best_v, best_sat, best_deg = -1, -1, -1
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = 0
            for c in range(used):
                if adj[v] & classes[c]:
                    sat += 1
            if sat > best_sat or (sat == best_sat and degree[v] > best_deg):
                best_v, best_sat, best_deg = v, sat, degree[v]
        v = best_v
        bit = 1 << v
        for c in range(used + 1):
            if max(used, c + 1) >= best[0]:
                break
            if adj[v] & classes[c]:
                continue
            colors[v] = c
            classes[c] |= bit
            done = search(colored + 1, max(used, c + 1))
            classes[c] &= ~bit
            colors[v] = -1
            if done:
                return True
        return False

    search(0, 0)
    return best[0], best[1]

