"""Small explicit graphs, the generators used throughout the package, and
exact clique / colouring search.

Vertices are ``0..n-1``; adjacency is stored as one Python-int bitmask per
vertex.  Bitstring vertices use the convention ``x_i = (x >> i) & 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

from roundelim import _kernels
from roundelim.errors import DomainError

EXPLICIT_MAX_VERTICES = 4096
EXACT_SEARCH_MAX_VERTICES = 64


def popcount(x: int) -> int:
    return bin(x).count("1")


def hamming(x: int, y: int) -> int:
    return popcount(x ^ y)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adj: tuple[int, ...]
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.vertex_count:
            raise DomainError("adjacency length does not match vertex count")
        for v, nb in enumerate(self.adj):
            if nb >> v & 1:
                raise DomainError(f"self-loop at {v}")
            if nb >> self.vertex_count:
                raise DomainError(f"neighbour of {v} out of range")
        if self.vertex_count > 1024:
            # large graphs only come from symmetric generators
            return
        for v, nb in enumerate(self.adj):
            rest = nb
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise DomainError(f"asymmetric adjacency between {u} and {v}")
                rest ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), None if labels is None else tuple(labels))

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.vertex_count) if self.adj[v] >> u & 1]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.neighbors(u) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def adjacency_matrix(self) -> np.ndarray:
        n = self.vertex_count
        A = np.zeros((n, n))
        for u, v in self.edges():
            A[u, v] = A[v, u] = 1.0
        return A

    def label(self, v: int):
        return v if self.labels is None else self.labels[v]

    def to_text(self) -> str:
        lines = [f"{self.vertex_count} {self.edge_count}"]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise DomainError("graph text must start with 'n m'")
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
        if len(edges) != m:
            raise DomainError(f"header says {m} edges, found {len(edges)}")
        return cls.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def hamming_graph(n: int, d: int) -> Graph:
    """H(n, d): n-bit strings adjacent at Hamming distance exactly d."""
    return distance_graph(n, [d])


def distance_graph(n: int, distances: Iterable[int]) -> Graph:
    dist = sorted(set(distances))
    if n < 1 or any(not 0 < d <= n for d in dist):
        raise DomainError(f"bad distance set {dist} for n={n}")
    size = 1 << n
    if size > EXPLICIT_MAX_VERTICES:
        raise DomainError(f"2^{n} vertices exceeds explicit cap {EXPLICIT_MAX_VERTICES}; use HammingOracle")
    masks = [m for m in range(size) if popcount(m) in dist]
    adj = []
    for x in range(size):
        bits = 0
        for m in masks:
            bits |= 1 << (x ^ m)
        adj.append(bits)
    return Graph(size, tuple(adj), tuple(range(size)))


@dataclass(frozen=True)
class HammingOracle:
    """Adjacency predicate for distance graphs too large to store."""

    n: int
    distances: frozenset[int]

    def adjacent(self, x: int, y: int) -> bool:
        return hamming(x, y) in self.distances

    @property
    def vertex_count(self) -> int:
        return 1 << self.n


def gk_graph(n: int) -> Graph:
    """Strings adjacent when their distance is at least n/2."""
    if n % 2:
        raise DomainError(f"gk_graph needs even n, got {n}")
    return distance_graph(n, range(n // 2, n + 1))


def gk_oracle(n: int) -> HammingOracle:
    if n % 2:
        raise DomainError(f"gk_oracle needs even n, got {n}")
    return HammingOracle(n, frozenset(range(n // 2, n + 1)))


@dataclass(frozen=True)
class ListFamily:
    universe: tuple[Hashable, ...]
    lists: tuple[frozenset, ...]

    def __post_init__(self):
        members = set(self.universe)
        for L in self.lists:
            if not L:
                raise DomainError("empty list in family")
            if not L <= members:
                raise DomainError(f"list {sorted(L)} not inside universe")

    @classmethod
    def of(cls, universe: Iterable, lists: Iterable[Iterable]) -> "ListFamily":
        return cls(tuple(universe), tuple(frozenset(L) for L in lists))

    @property
    def max_list_size(self) -> int:
        return max((len(L) for L in self.lists), default=0)


def list_graph(F: ListFamily) -> Graph:
    """Elements adjacent when they appear together in some list."""
    index = {u: i for i, u in enumerate(F.universe)}
    adj = [0] * len(F.universe)
    for L in F.lists:
        ids = [index[u] for u in L]
        mask = sum(1 << i for i in ids)
        for i in ids:
            adj[i] |= mask ^ (1 << i)
    return Graph(len(adj), tuple(adj), F.universe)


def complement(G: Graph) -> Graph:
    full = (1 << G.vertex_count) - 1
    return Graph(G.vertex_count, tuple(full ^ a ^ (1 << v) for v, a in enumerate(G.adj)), G.labels)


def suspension(G: Graph, t: int) -> Graph:
    """Add t new vertices adjacent to each other and to every old vertex."""
    if t < 0:
        raise DomainError("t must be nonnegative")
    n = G.vertex_count
    m = n + t
    new_bits = ((1 << t) - 1) << n
    adj = [a | new_bits for a in G.adj]
    full = (1 << m) - 1
    adj += [full ^ (1 << (n + k)) for k in range(t)]
    return Graph(m, tuple(adj))


def gadget_graph(G: Graph) -> Graph:
    """Attach a four-vertex gadget to every unordered pair {i, j}.

    Gadget vertices a, b, c, d carry the edges ia, ab, ib, jc, cd, jd, id,
    bc, aj.  The triangles iab and jcd force at least three colours, and any
    3-colouring of G extends to the gadgets.
    """
    n = G.vertex_count
    if n < 2:
        raise DomainError("gadget_graph needs at least two vertices")
    edges = list(G.edges())
    nxt = n
    for i, j in itertools.combinations(range(n), 2):
        a, b, c, d = nxt, nxt + 1, nxt + 2, nxt + 3
        nxt += 4
        edges += [(i, a), (a, b), (i, b), (j, c), (c, d), (j, d), (i, d), (b, c), (a, j)]
    H = Graph.from_edges(nxt, edges)
    if H.vertex_count != n + 2 * n * (n - 1):
        raise AssertionError("gadget vertex count")
    if 2 * H.edge_count != 2 * G.edge_count + 9 * n * (n - 1):
        raise AssertionError("gadget edge count")
    return H


def _require_exact(G: Graph) -> None:
    if G.vertex_count > EXACT_SEARCH_MAX_VERTICES:
        raise DomainError(f"exact search limited to {EXACT_SEARCH_MAX_VERTICES} vertices, got {G.vertex_count}")


def max_clique(G: Graph) -> list[int]:
    _require_exact(G)
    _, mask = _kernels.max_clique(list(G.adj), G.vertex_count)
    return [v for v in range(G.vertex_count) if mask >> v & 1]


def clique_number(G: Graph) -> int:
    return len(max_clique(G))


def independence_number(G: Graph) -> int:
    return clique_number(complement(G))


def coloring(G: Graph) -> list[int]:
    """An optimal proper colouring (colours 0..chi-1)."""
    _require_exact(G)
    omega, _ = _kernels.max_clique(list(G.adj), G.vertex_count)
    _, cols = _kernels.chromatic_number(list(G.adj), G.vertex_count, omega)
    for u, v in G.edges():
        if cols[u] == cols[v]:
            raise AssertionError(f"colouring search returned clash on edge {u}-{v}")
    return list(cols)


def chromatic_number(G: Graph) -> int:
    if G.vertex_count == 0:
        return 0
    return max(coloring(G)) + 1


def clique_containing(adj: Sequence[int], v: int, limit: int | None = None,
                      budget: int = 200_000) -> list[int]:
    """A large clique through ``v`` (not guaranteed maximum).

    Bounded Bron-Kerbosch over the neighbourhood of ``v``; returns the best
    clique seen within ``budget`` recursive calls, stopping early at
    ``limit`` vertices.
    """
    best = [1 << v]
    calls = [0]

    def rec(r: int, p: int) -> bool:
        calls[0] += 1
        if popcount(r) > popcount(best[0]):
            best[0] = r
        if limit is not None and popcount(best[0]) >= limit:
            return True
        if calls[0] >= budget or popcount(r) + popcount(p) <= popcount(best[0]):
            return calls[0] >= budget
        while p:
            low = p & -p
            u = low.bit_length() - 1
            if rec(r | low, p & adj[u]):
                return True
            p ^= low
        return False

    rec(1 << v, adj[v])
    mask = best[0]
    return [u for u in range(mask.bit_length()) if mask >> u & 1]


def canonical_form(G: Graph) -> tuple[int, ...]:
    """Lexicographically least adjacency under all vertex permutations
    (brute force, for tiny graphs)."""
    n = G.vertex_count
    if n > 8:
        raise DomainError("canonical_form is brute force; n <= 8")
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        rows = tuple(sum(1 << inv[u] for u in G.neighbors(perm[i])) for i in range(n))
        if best is None or rows < best:
            best = rows
    return best or ()


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of graphs on n vertices."""
    if n > 6:
        raise DomainError("enumeration supported up to 6 vertices")
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[tuple[int, ...], Graph] = {}
    for mask in range(1 << len(pairs)):
        G = Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        key = canonical_form(G)
        if key not in seen:
            seen[key] = G
    return [seen[k] for k in sorted(seen)]


def xor_translation(u: int, v: int):
    """Automorphism of every distance graph sending u to v."""
    shift = u ^ v
    return lambda x: x ^ shift


def edge_mapping(n: int, edge_from: tuple[int, int], edge_to: tuple[int, int]):
    """Automorphism of H(n, d) sending the edge (u, v) onto (s, t) with
    u -> s and v -> t.

    Translate u to 0, permute coordinates so the support of u^v lands on the
    support of s^t, then translate 0 to s.
    """
    u, v = edge_from
    s, t = edge_to
    src = [i for i in range(n) if (u ^ v) >> i & 1]
    dst = [i for i in range(n) if (s ^ t) >> i & 1]
    if len(src) != len(dst):
        raise DomainError("edges lie at different distances")
    rest_src = [i for i in range(n) if i not in src]
    rest_dst = [i for i in range(n) if i not in dst]
    perm = dict(zip(src + rest_src, dst + rest_dst))

    def nu(x: int) -> int:
        y = x ^ u
        out = 0
        for i in range(n):
            if y >> i & 1:
                out |= 1 << perm[i]
        return out ^ s

    return nu


def is_automorphism(G: Graph, f) -> bool:
    n = G.vertex_count
    image = [f(v) for v in range(n)]
    if sorted(image) != list(range(n)):
        return False
    return all(G.adjacent(image[u], image[v]) for u, v in G.edges())
