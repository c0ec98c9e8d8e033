"""Lovasz theta via closed formulas, plus checkable primal and dual certificates.

Primal (maximisation) certificate for theta(G): X PSD, trace 1, X_ij = 0 on
edges of G; value sum_ij X_ij is a lower bound.
Dual certificate for theta(G): Y PSD with Y_ii = t - 1 and Y_ij = -1 on
non-edges of G; t is an upper bound.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from roundelim.errors import DomainError, InvariantError
from roundelim.graphs import Graph, complement
from roundelim.krawtchouk import lambda_min_index, spectrum
from roundelim.numerics import binom, entropy
from roundelim.orthrep import OrthRep, check

PSD_TOL = 1e-8
EQ_TOL = 1e-10
CERT_MAX_VERTICES = 2048


@dataclass(frozen=True)
class ThetaCertificate:
    kind: str  # "primal" or "dual"
    matrix: np.ndarray
    value: float
    graph: Graph | None = None

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "n": int(self.matrix.shape[0]),
            "matrix": [float(v) for v in self.matrix.ravel()],
            "value": float(self.value),
        })

    @classmethod
    def from_json(cls, text: str) -> "ThetaCertificate":
        obj = json.loads(text)
        n = obj["n"]
        M = np.array(obj["matrix"], dtype=float).reshape(n, n)
        return cls(obj["kind"], M, float(obj["value"]))


def theta_transitive(lambda_1: float, lambda_n: float) -> float:
    """theta of the complement of a vertex- and edge-transitive graph with
    largest eigenvalue lambda_1 and smallest lambda_n."""
    if not lambda_n < 0:
        raise DomainError(f"need a negative smallest eigenvalue, got {lambda_n}")
    return float(1 - Fraction(lambda_1) / Fraction(lambda_n))


def theta_complement_hamming_exact(n: int, d: int) -> Fraction:
    spec = spectrum(n, d)
    if spec.lambda_min == 0:
        raise DomainError(f"H({n},{d}) has smallest eigenvalue 0")
    return 1 - Fraction(binom(n, d), spec.lambda_min)


def theta_complement_hamming(n: int, d: int) -> float:
    """theta of the complement of H(n, d): 1 - C(n, d) / lambda_min."""
    return float(theta_complement_hamming_exact(n, d))


def psd_check(M: np.ndarray, tol: float = PSD_TOL) -> tuple[bool, int | None]:
    """Pivoted Cholesky.  Returns (is_psd, offending_pivot).

    Factor while the largest remaining diagonal exceeds ``tol``; the
    leftover Schur complement must then be within ``tol`` of zero.
    """
    A = np.array(M, dtype=float, copy=True)
    n = A.shape[0]
    if n == 0:
        return True, None
    scale = max(1.0, float(np.max(np.abs(np.diag(A)))))
    eps = tol * scale
    active = np.ones(n, dtype=bool)
    for _ in range(n):
        diag = np.where(active, np.diag(A), -np.inf)
        p = int(np.argmax(diag))
        piv = diag[p]
        if piv <= eps:
            break
        col = A[:, p] / math.sqrt(piv)
        col[~active] = 0.0
        A -= np.outer(col, col)
        active[p] = False
    if not active.any():
        return True, None
    rest = np.abs(A[np.ix_(active, active)])
    if rest.size and float(rest.max()) > eps:
        idx = np.flatnonzero(active)
        bad = int(idx[np.unravel_index(int(np.argmax(rest)), rest.shape)[0]])
        return False, bad
    return True, None


def _edge_mask(G: Graph) -> np.ndarray:
    return G.adjacency_matrix() > 0


def verify_primal(X, G: Graph) -> float:
    """Check a primal certificate for theta(G); return sum_ij X_ij."""
    X = np.asarray(X, dtype=float)
    n = G.vertex_count
    if X.shape != (n, n):
        raise DomainError(f"certificate shape {X.shape} does not match {n} vertices")
    if not np.allclose(X, X.T, atol=EQ_TOL, rtol=0.0):
        raise InvariantError("primal-symmetric")
    ok, where = psd_check(X)
    if not ok:
        raise InvariantError("primal-psd", f"pivot {where}")
    tr = float(np.trace(X))
    if abs(tr - 1.0) > EQ_TOL:
        raise InvariantError("primal-trace", f"trace {tr}")
    on_edges = np.abs(X[_edge_mask(G)])
    if on_edges.size and float(on_edges.max()) > EQ_TOL:
        raise InvariantError("primal-edge-zero", f"max |X_ij| on edges {on_edges.max()}")
    return float(X.sum())


def verify_dual(Y, G: Graph) -> float:
    """Check a dual certificate for theta(G); return t = Y_00 + 1."""
    Y = np.asarray(Y, dtype=float)
    n = G.vertex_count
    if Y.shape != (n, n):
        raise DomainError(f"certificate shape {Y.shape} does not match {n} vertices")
    if not np.allclose(Y, Y.T, atol=EQ_TOL, rtol=0.0):
        raise InvariantError("dual-symmetric")
    t = float(Y[0, 0]) + 1.0
    if np.max(np.abs(np.diag(Y) - (t - 1.0))) > 1e-8:
        raise InvariantError("dual-diagonal")
    non_edges = ~_edge_mask(G)
    np.fill_diagonal(non_edges, False)
    off = Y[non_edges]
    if off.size and float(np.max(np.abs(off + 1.0))) > 1e-8:
        raise InvariantError("dual-nonedge", "entries on non-edges must be -1")
    ok, where = psd_check(Y)
    if not ok:
        raise InvariantError("dual-psd", f"pivot {where}")
    return t


def independent_set_certificate(G: Graph, S) -> ThetaCertificate:
    """J/|S| on an independent set S: primal value |S|."""
    S = sorted(S)
    for i in S:
        for j in S:
            if G.adjacent(i, j):
                raise DomainError(f"{i} and {j} are adjacent")
    X = np.zeros((G.vertex_count, G.vertex_count))
    X[np.ix_(S, S)] = 1.0 / len(S)
    return ThetaCertificate("primal", X, verify_primal(X, G), G)


def dual_cert_from_orthrep(rep: OrthRep, G: Graph) -> ThetaCertificate:
    """Dual certificate of value dim(rep) for theta(complement(G)).

    With W_ij = |<u_i, u_j>|^2 = <u_i (x) conj u_i, u_j (x) conj u_j> and
    <vec I, u_i (x) conj u_i> = 1, the Gram matrix of (vec I, u_i (x) conj u_i)
    is PSD; its Schur complement at the vec I entry (= dim) gives
    dim * W - J >= 0, which has diagonal dim - 1 and -1 wherever u_i and u_j
    are orthogonal (every edge of G).
    """
    if G.vertex_count > CERT_MAX_VERTICES:
        raise DomainError(f"certificate limited to {CERT_MAX_VERTICES} vertices")
    report = check(rep, G)
    if not report.passed:
        raise DomainError(f"not an orthonormal representation: {report}")
    V = rep.vectors[: G.vertex_count]
    W = np.abs(V.conj() @ V.T) ** 2
    Y = rep.dimension * W - 1.0
    np.fill_diagonal(Y, rep.dimension - 1.0)
    Y[_edge_mask(G)] = -1.0
    value = verify_dual(Y, complement(G))
    return ThetaCertificate("dual", Y, value, complement(G))


def xi_rate(alpha: float) -> float:
    """(H(alpha) + H(1/2 - sqrt((1 - alpha) alpha)) - 1) / 2."""
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must lie in (0, 1/2), got {alpha}")
    return (entropy(alpha) + entropy(0.5 - math.sqrt((1 - alpha) * alpha)) - 1.0) / 2.0


def xi_lower_bound(n: int, d: int) -> tuple[float, float]:
    """log2(1 + sqrt(C(n,d) C(n,x*) / 2^n)), x* = ceil(n/2 - sqrt((n-d)d)),
    and the asymptotic rate at alpha = d/n.

    The first value lower-bounds log2 of the orthogonal rank of H(n, d); it
    is checked against log2 theta of the complement computed exactly.
    """
    if n % 2 or d % 2 or not 0 < d or not 2 * d < n:
        raise DomainError(f"xi_lower_bound needs even n, d with 0 < d < n/2, got n={n}, d={d}")
    xs = lambda_min_index(n, d)
    bits = math.log2(1.0 + math.sqrt(Fraction(binom(n, d) * binom(n, xs), 1 << n)))
    theta = theta_complement_hamming_exact(n, d)
    if bits > math.log2(theta) + 1e-12:
        raise InvariantError("xi-bound-below-theta", f"{bits} > log2 {theta}")
    return bits, xi_rate(d / n)
