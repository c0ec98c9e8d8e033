"""Orthonormal representations: unit vectors per vertex, orthogonal on edges.

A representation of dimension D for G is a one-round quantum protocol
sending ceil(log2 D) qubits for the corresponding list or equality problem.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from roundelim.errors import DomainError, InvariantError
from roundelim.graphs import Graph, popcount
from roundelim.numerics import binom, ceil_log2, entropy

TOL = 1e-9


@dataclass(frozen=True)
class OrthRep:
    """``vectors[v]`` is the unit vector of vertex ``v`` (rows of a 2-D array)."""

    dimension: int
    vectors: np.ndarray
    name: str = ""

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[1] != self.dimension:
            raise DomainError(f"vectors must have shape (N, {self.dimension})")

    @property
    def vertex_count(self) -> int:
        return self.vectors.shape[0]

    def inner(self, u: int, v: int) -> complex:
        return complex(np.vdot(self.vectors[u], self.vectors[v]))

    def to_json(self) -> str:
        rows = [[[float(z.real), float(z.imag)] for z in vec] for vec in self.vectors.astype(complex)]
        return json.dumps({"dimension": self.dimension, "name": self.name, "vectors": rows})

    @classmethod
    def from_json(cls, text: str) -> "OrthRep":
        obj = json.loads(text)
        vecs = np.array([[re + 1j * im for re, im in row] for row in obj["vectors"]], dtype=complex)
        return cls(int(obj["dimension"]), vecs, obj.get("name", ""))


@dataclass(frozen=True)
class CheckReport:
    max_norm_defect: float
    max_edge_inner_product: float
    worst_edge: tuple[int, int] | None
    tol: float = TOL

    @property
    def passed(self) -> bool:
        return self.max_norm_defect <= self.tol and self.max_edge_inner_product <= self.tol


def _adjacency_rows(G: Graph, lo: int, hi: int) -> np.ndarray:
    n = G.vertex_count
    nbytes = (n + 7) // 8
    rows = np.zeros((hi - lo, n), dtype=bool)
    for r, v in enumerate(range(lo, hi)):
        raw = np.frombuffer(G.adj[v].to_bytes(nbytes, "little"), dtype=np.uint8)
        rows[r] = np.unpackbits(raw, bitorder="little")[:n].astype(bool)
    return rows


def check(rep: OrthRep, G: Graph, tol: float = TOL, block: int = 512) -> CheckReport:
    """Largest unit-norm defect and largest |<u, v>| over edges uv."""
    if rep.vertex_count < G.vertex_count:
        raise DomainError(f"representation covers {rep.vertex_count} of {G.vertex_count} vertices")
    V = rep.vectors[: G.vertex_count]
    norms = np.sqrt(np.sum(np.abs(V) ** 2, axis=1))
    norm_defect = float(np.max(np.abs(norms - 1.0))) if len(norms) else 0.0
    worst, worst_edge = 0.0, None
    for lo in range(0, G.vertex_count, block):
        hi = min(lo + block, G.vertex_count)
        gram = np.abs(V[lo:hi].conj() @ V.T)
        mask = _adjacency_rows(G, lo, hi)
        if not mask.any():
            continue
        vals = np.where(mask, gram, -1.0)
        idx = np.unravel_index(int(np.argmax(vals)), vals.shape)
        if vals[idx] > worst or worst_edge is None:
            worst = float(vals[idx])
            worst_edge = (lo + int(idx[0]), int(idx[1]))
    return CheckReport(norm_defect, worst, worst_edge, tol)


def basis_rep(k: int) -> OrthRep:
    """Standard basis vectors: a representation of the complete graph K_k."""
    return OrthRep(k, np.eye(k, dtype=complex), "basis")


def constant_rep(count: int, dim: int = 1) -> OrthRep:
    vecs = np.zeros((count, dim), dtype=complex)
    vecs[:, 0] = 1.0
    return OrthRep(dim, vecs, "constant")


def _sign_matrix(n: int, count: int) -> np.ndarray:
    """S[x, i] = (-1)^{x_i} for x < count."""
    xs = np.arange(count, dtype=np.int64)[:, None]
    bits = (xs >> np.arange(n, dtype=np.int64)[None, :]) & 1
    return 1.0 - 2.0 * bits


def fourier_rep(n: int) -> OrthRep:
    """x -> n^{-1/2} sum_i (-1)^{x_i} e_i; orthogonal exactly at distance n/2."""
    if n < 2 or n % 2:
        raise DomainError(f"fourier_rep needs even n >= 2, got {n}")
    if n > 12:
        raise DomainError("explicit representation limited to n <= 12")
    vecs = _sign_matrix(n, 1 << n) / math.sqrt(n)
    return OrthRep(n, vecs.astype(complex), f"fourier({n})")


def padded_rep(n: int, ell: int) -> OrthRep:
    """Representation of H(n, n/2 - ell) in dimension 4^ell (n - 2 ell).

    The low 2*ell bits select a standard basis vector; the remaining
    n - 2*ell bits are Fourier-encoded.  Two strings at distance n/2 - ell
    either differ in the low block (orthogonal first factor) or differ in
    exactly half of the remaining bits (orthogonal second factor).
    """
    if ell < 0 or 2 * ell >= n or n % 2:
        raise DomainError(f"padded_rep needs even n and 0 <= 2*ell < n, got n={n}, ell={ell}")
    if n > 12:
        raise DomainError("explicit representation limited to n <= 12")
    rest = n - 2 * ell
    head = 1 << (2 * ell)
    count = 1 << n
    vecs = np.zeros((count, head * rest))
    tail = _sign_matrix(rest, 1 << rest) / math.sqrt(rest)
    for x in range(count):
        h = x & (head - 1)
        vecs[x, h * rest:(h + 1) * rest] = tail[x >> (2 * ell)]
    return OrthRep(head * rest, vecs.astype(complex), f"padded({n},{ell})")


class MultilinearPoly:
    """Polynomial in z_1..z_n with z_i^2 = 1; keys are subset bitmasks."""

    def __init__(self, n: int, coeffs: dict[int, Fraction | int] | None = None):
        self.n = n
        self.coeffs: dict[int, Fraction | int] = {}
        for S, a in (coeffs or {}).items():
            if a:
                self.coeffs[S] = a

    @classmethod
    def constant(cls, n: int, c) -> "MultilinearPoly":
        return cls(n, {0: c})

    @classmethod
    def linear_sum(cls, n: int, c=0) -> "MultilinearPoly":
        """c + z_1 + ... + z_n."""
        out = {1 << k: 1 for k in range(n)}
        out[0] = c
        return cls(n, out)

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        acc: dict[int, Fraction | int] = {}
        for S, a in self.coeffs.items():
            for T, b in other.coeffs.items():
                acc[S ^ T] = acc.get(S ^ T, 0) + a * b
        return MultilinearPoly(self.n, acc)

    def __call__(self, z) -> Fraction | int:
        total = 0
        for S, a in self.coeffs.items():
            sign = 1
            for k in range(self.n):
                if S >> k & 1 and z[k] < 0:
                    sign = -sign
            total += sign * a
        return total

    @property
    def mon(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        return max((popcount(S) for S in self.coeffs), default=0)

    def evaluations(self) -> list:
        """Exact values P(z_w) for every w in {0,1}^n, where z_k = (-1)^{w_k}.

        A Walsh-Hadamard transform of the coefficient vector.
        """
        size = 1 << self.n
        vals = [0] * size
        for S, a in self.coeffs.items():
            vals[S] = a
        h = 1
        while h < size:
            for i in range(0, size, 2 * h):
                for j in range(i, i + h):
                    a, b = vals[j], vals[j + h]
                    vals[j], vals[j + h] = a + b, a - b
            h *= 2
        return vals


def gk_polynomials(n: int) -> tuple[MultilinearPoly, MultilinearPoly]:
    """(P_even, P_odd).  P_even = prod_{k=0}^{n/4} (4k + sum z) vanishes when
    sum z = n - 2d for an even d >= n/2; P_odd = 1 + prod z vanishes when
    an odd number of z_k are -1."""
    if n % 4 or n <= 0:
        raise DomainError(f"gk polynomials need n divisible by 4, got {n}")
    p_even = MultilinearPoly.constant(n, 1)
    for k in range(n // 4 + 1):
        p_even = p_even * MultilinearPoly.linear_sum(n, 4 * k)
    p_odd = MultilinearPoly(n, {0: 1, (1 << n) - 1: 1})
    return p_even, p_odd


@dataclass(frozen=True)
class GkPolyReport:
    n: int
    mon_even: int
    mon_count: int
    degree: int
    p_at_ones: int
    exact_defect: int
    entropy_bound: float
    slack_bound: int

    @property
    def within_entropy_bound(self) -> bool:
        return self.mon_count <= self.entropy_bound

    @property
    def within_slack_bound(self) -> bool:
        return self.mon_count <= 2 * self.slack_bound


def gk_poly_report(n: int) -> tuple[MultilinearPoly, GkPolyReport]:
    """Build P = P_even P_odd and check it exactly.

    ``exact_defect`` is max |P(z)| over z with sum z <= 0 (the pairs at
    distance >= n/2) and must be 0.  The entropy bound is 2^{H(1/4) n + 1};
    the slack bound counts monomials of degree <= n/4 + 1.
    """
    if n > 16:
        raise DomainError(f"gk_poly_rep supports n <= 16, got {n}")
    p_even, p_odd = gk_polynomials(n)
    P = p_even * p_odd
    neg = [S for S, a in P.coeffs.items() if a < 0]
    if neg:
        raise InvariantError("nonnegative-coefficients", f"{len(neg)} negative coefficients")
    vals = P.evaluations()
    p1 = vals[0]
    if not p1 > 0:
        raise InvariantError("positive-at-ones", str(p1))
    defect = max(abs(vals[w]) for w in range(1 << n) if 2 * popcount(w) >= n)
    slack = sum(binom(n, k) for k in range(n // 4 + 2))
    report = GkPolyReport(
        n=n,
        mon_even=p_even.mon,
        mon_count=P.mon,
        degree=P.degree,
        p_at_ones=int(p1),
        exact_defect=int(defect),
        entropy_bound=2.0 ** (entropy(0.25) * n + 1),
        slack_bound=slack,
    )
    return P, report


def gk_poly_rep(n: int) -> tuple[OrthRep, GkPolyReport]:
    """phi(x) = sum_S sqrt(alpha_S / P(1..1)) (-1)^{|S & x|} e_S.

    <phi(x), phi(y)> = P(z)/P(1..1) with z_k = (-1)^{x_k + y_k}, so strings
    at distance >= n/2 get orthogonal vectors.
    """
    if n > 12:
        raise DomainError("explicit gk representation limited to n <= 12")
    P, report = gk_poly_report(n)
    keys = sorted(P.coeffs)
    scale = np.array([math.sqrt(Fraction(P.coeffs[S], report.p_at_ones)) for S in keys])
    masks = np.array(keys, dtype=np.int64)
    xs = np.arange(1 << n, dtype=np.int64)[:, None]
    parity = np.bitwise_count(xs & masks[None, :]) & 1
    vecs = (1.0 - 2.0 * parity) * scale[None, :]
    return OrthRep(len(keys), vecs.astype(complex), f"gk-poly({n})"), report


def list_state_dim(n: int) -> int:
    return 2 << ceil_log2(n)


def list_gamma_sq(n: int, d: int) -> Fraction:
    if not (n <= 2 * d and d <= n):
        raise DomainError(f"list states need n/2 <= d <= n, got n={n}, d={d}")
    return 1 - Fraction(n, 2 * d)


def list_state(x: int, n: int, d: int) -> np.ndarray:
    """gamma |0>|0> + sqrt((1 - gamma^2)/n) sum_i (-1)^{x_i} |1>|i>,
    zero-padded to 2 * 2^ceil(log2 n) amplitudes (index c * 2^L + i)."""
    g2 = list_gamma_sq(n, d)
    L = ceil_log2(n)
    out = np.zeros(2 << L, dtype=complex)
    out[0] = math.sqrt(g2)
    amp = math.sqrt((1 - g2) / n)
    for i in range(n):
        out[(1 << L) + i] = -amp if x >> i & 1 else amp
    return out


def list_inner_exact(n: int, d: int, dist: int) -> Fraction:
    """<phi_x, phi_y> = gamma^2 + (1 - gamma^2)(1 - 2 dist / n), exactly."""
    g2 = list_gamma_sq(n, d)
    return g2 + (1 - g2) * (1 - Fraction(2 * dist, n))


def list_rep(n: int, d: int) -> OrthRep:
    """All list states as a representation of H(n, d)."""
    if n > 12:
        raise DomainError("explicit representation limited to n <= 12")
    vecs = np.array([list_state(x, n, d) for x in range(1 << n)])
    return OrthRep(list_state_dim(n), vecs, f"list({n},{d})")
