"""Exact combinatorics, binary entropy and small symmetric eigensolvers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from roundelim import _kernels
from roundelim.errors import DomainError

Rational = Fraction

DENSE_EIG_MAX_DIM = 4096


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise DomainError(f"binom needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def entropy(p: float) -> float:
    """Binary entropy in bits; ``entropy(0) == entropy(1) == 0``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"entropy needs p in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def ceil_log2(n: int) -> int:
    """Number of qubits (or bits) needed to index ``n`` items."""
    if n < 1:
        raise DomainError(f"ceil_log2 needs n >= 1, got {n}")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class SymTridiag:
    """Zero-diagonal symmetric tridiagonal matrix given by its off-diagonal."""

    offdiag: tuple[float, ...]

    @property
    def dim(self) -> int:
        return len(self.offdiag) + 1

    def dense(self) -> np.ndarray:
        m = self.dim
        out = np.zeros((m, m))
        for i, b in enumerate(self.offdiag):
            out[i, i + 1] = out[i + 1, i] = b
        return out

    @classmethod
    def levenshtein(cls, n: int, d: int) -> "SymTridiag":
        """Matrix whose top eigenvalue is the max over unit z of
        sum_i z_i z_{i+1} sqrt((i+1)(n-i)), i = 0..d-2."""
        return cls(tuple(math.sqrt((i + 1) * (n - i)) / 2.0 for i in range(d - 1)))


def tridiag_max_eig(T: SymTridiag | Sequence[float]) -> float:
    """Largest eigenvalue by Sturm-sequence bisection (abs. error < 1e-10)."""
    offdiag = T.offdiag if isinstance(T, SymTridiag) else tuple(T)
    return _kernels.tridiag_max_eig([float(b) for b in offdiag])


def dense_sym_eigs(M) -> list[float]:
    """All eigenvalues of a real symmetric matrix, ascending."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"dense_sym_eigs needs a square matrix, got shape {A.shape}")
    if A.shape[0] > DENSE_EIG_MAX_DIM:
        raise DomainError(f"dimension {A.shape[0]} exceeds {DENSE_EIG_MAX_DIM}")
    if not np.allclose(A, A.T, atol=1e-12, rtol=0.0):
        raise DomainError("dense_sym_eigs needs a symmetric matrix")
    if A.shape[0] == 0:
        return []
    return sorted(float(v) for v in np.linalg.eigvalsh(A))


def fraction_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())
