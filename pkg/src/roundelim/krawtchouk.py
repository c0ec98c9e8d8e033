"""Binary Krawtchouk polynomials and the spectrum of distance graphs H(n, d).

H(n, d) has the binary strings of length n as vertices, adjacent when they
differ in exactly d positions.  Its eigenvalues are K_d^n(x) for x = 0..n,
each with multiplicity C(n, x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from roundelim.errors import DomainError, InvariantError
from roundelim.numerics import SymTridiag, binom, tridiag_max_eig


def _check_nd(n: int, d: int) -> None:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if not 0 <= d <= n:
        raise DomainError(f"d must lie in [0, {n}], got {d}")


def kraw(n: int, d: int, x: int) -> int:
    """K_d^n(x) = sum_j (-1)^j C(x, j) C(n - x, d - j)."""
    _check_nd(n, d)
    if not 0 <= x <= n:
        raise DomainError(f"x must lie in [0, {n}], got {x}")
    return sum((-1) ** j * binom(x, j) * binom(n - x, d - j) for j in range(d + 1))


def kraw_row(n: int, d: int) -> list[int]:
    """[K_d^n(0), ..., K_d^n(n)] via the three-term recurrence in d.

    (d + 1) K_{d+1}(x) = (n - 2x) K_d(x) - (n - d + 1) K_{d-1}(x)
    """
    _check_nd(n, d)
    prev = [1] * (n + 1)
    if d == 0:
        return prev
    cur = [n - 2 * x for x in range(n + 1)]
    for k in range(1, d):
        nxt = []
        for x in range(n + 1):
            num = (n - 2 * x) * cur[x] - (n - k + 1) * prev[x]
            q, r = divmod(num, k + 1)
            if r:
                raise InvariantError("krawtchouk-recurrence", f"non-integer at d={k + 1}, x={x}")
            nxt.append(q)
        prev, cur = cur, nxt
    return cur


def orthogonality_defect(n: int) -> int:
    """max over d, d' of |sum_x C(n,x) K_d(x) K_d'(x) - [d = d'] C(n,d) 2^n|."""
    if not 1 <= n <= 24:
        raise DomainError(f"orthogonality_defect supports 1 <= n <= 24, got {n}")
    table = [[kraw(n, d, x) for x in range(n + 1)] for d in range(n + 1)]
    weights = [binom(n, x) for x in range(n + 1)]
    worst = 0
    for d in range(n + 1):
        for e in range(d, n + 1):
            s = sum(w * a * b for w, a, b in zip(weights, table[d], table[e]))
            if d == e:
                s -= binom(n, d) << n
            worst = max(worst, abs(s))
    return worst


@dataclass(frozen=True)
class HammingSpectrum:
    n: int
    d: int
    values: tuple[tuple[int, int, int], ...]  # (x, K_d^n(x), C(n, x))
    lambda_min: int
    lambda_max: int

    def eigenvalue_multiset(self) -> list[int]:
        out: list[int] = []
        for _, ev, mult in self.values:
            out.extend([ev] * mult)
        return sorted(out)

    def distinct(self) -> dict[int, int]:
        """Distinct eigenvalue -> total multiplicity."""
        acc: dict[int, int] = {}
        for _, ev, mult in self.values:
            acc[ev] = acc.get(ev, 0) + mult
        return dict(sorted(acc.items()))


def spectrum(n: int, d: int) -> HammingSpectrum:
    _check_nd(n, d)
    if d < 1:
        raise DomainError(f"spectrum needs d >= 1, got {d}")
    values = tuple((x, kraw(n, d, x), binom(n, x)) for x in range(n + 1))
    if sum(m for _, _, m in values) != 1 << n:
        raise InvariantError("multiplicity-sum")
    if sum(ev * m for _, ev, m in values) != 0:
        raise InvariantError("zero-trace")
    lmin = min(ev for _, ev, _ in values)
    lmax = max(ev for _, ev, _ in values)
    if lmax != binom(n, d):
        raise InvariantError("lambda-max", f"{lmax} != C({n},{d})")
    if n % 2 == 0 and d % 2 == 0 and 2 * d < n and not lmin < 0:
        raise InvariantError("lambda-min-negative", f"H({n},{d})")
    return HammingSpectrum(n, d, values, lmin, lmax)


def root_tridiag(n: int, d: int) -> SymTridiag:
    return SymTridiag.levenshtein(n, d)


def smallest_root(n: int, d: int) -> float:
    """Smallest root of K_d^n as n/2 minus the top eigenvalue of a
    d x d tridiagonal matrix."""
    _check_nd(n, d)
    if d < 1:
        raise DomainError("K_0 is constant and has no roots")
    return n / 2 - tridiag_max_eig(root_tridiag(n, d))


def root_bracket(n: int, d: int) -> tuple[int, int]:
    """Integers (x1 - 1, x1) with x1 the first integer where K_d^n(x) <= 0.

    K_d^n is positive at 0 and, being degree d with all roots real and
    simple, first leaves the positive region at its smallest root r, so
    x1 - 1 < r <= x1.
    """
    _check_nd(n, d)
    row = kraw_row(n, d)
    for x, v in enumerate(row):
        if v <= 0:
            return x - 1, x
    raise InvariantError("root-bracket", f"K_{d}^{n} has no sign change on 0..{n}")


def root_interval(n: int, d: int) -> tuple[float, float]:
    _check_nd(n, d)
    if not 1 <= d or not 2 * d < n:
        raise DomainError(f"root_interval needs 1 <= d < n/2, got n={n}, d={d}")
    return n / 2 - math.sqrt((n - d) * d), n / 2


def lambda_min_index(n: int, d: int) -> int:
    """ceil(n/2 - sqrt(d(n-d))) for even n, computed exactly."""
    s = math.isqrt(d * (n - d))
    return n // 2 - s


def lambda_min_bound(n: int, d: int) -> float:
    """sqrt(2^n C(n,d) / C(n, x*)) with x* = ceil(n/2 - sqrt(d(n-d))).

    Also checks |lambda_min| against it in exact arithmetic
    (lambda_min^2 * C(n, x*) <= 2^n C(n, d)).
    """
    _check_nd(n, d)
    if n % 2 or d % 2:
        raise DomainError(f"lambda_min_bound needs even n and d, got n={n}, d={d}")
    if not 2 * d < n:
        raise DomainError(f"lambda_min_bound needs d < n/2, got n={n}, d={d}")
    xs = lambda_min_index(n, d)
    num = binom(n, d) << n
    den = binom(n, xs)
    lmin = spectrum(n, d).lambda_min
    if lmin * lmin * den > num:
        raise InvariantError("lambda-min-bound", f"|{lmin}| exceeds bound for H({n},{d})")
    return math.sqrt(Fraction(num, den))
