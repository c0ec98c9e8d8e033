"""Exact rational simplex (two-phase, Bland's rule) for small dense LPs,
and the Delsarte linear program for codes with minimum distance n/2.

Problems have the form: maximise c.a + constant subject to G a >= h, a >= 0.
Every answer carries a certificate that is re-checked in exact arithmetic:
a dual vector for optimal, a Farkas vector for infeasible and an improving
ray for unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from roundelim.errors import DomainError, InvariantError
from roundelim.krawtchouk import kraw_row
from roundelim.numerics import binom, fraction_str, parse_fraction

MAX_VARS = 200
MAX_CONSTRAINTS = 500


def _fr(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class LpProblem:
    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    @classmethod
    def build(cls, objective, rows, rhs, constant=0) -> "LpProblem":
        c = tuple(_fr(v) for v in objective)
        G = tuple(tuple(_fr(v) for v in r) for r in rows)
        h = tuple(_fr(v) for v in rhs)
        if any(len(r) != len(c) for r in G) or len(G) != len(h):
            raise DomainError("inconsistent LP dimensions")
        return cls(c, G, h, _fr(constant))

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def value(self, a: Sequence[Fraction]) -> Fraction:
        return _dot(self.objective, a) + self.constant

    def feasible(self, a: Sequence[Fraction]) -> bool:
        return all(v >= 0 for v in a) and all(_dot(r, a) >= b for r, b in zip(self.rows, self.rhs))

    def drop_rows(self, keep: Sequence[int]) -> "LpProblem":
        return LpProblem(self.objective, tuple(self.rows[i] for i in keep),
                         tuple(self.rhs[i] for i in keep), self.constant)

    def to_text(self) -> str:
        head = " ".join(fraction_str(v) for v in self.objective)
        lines = [f"max {head} {fraction_str(self.constant)}"]
        for r, b in zip(self.rows, self.rhs):
            lines.append(" ".join(fraction_str(v) for v in r) + f" >= {fraction_str(b)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LpProblem":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0][0] != "max":
            raise DomainError("LP text must start with 'max'")
        head = [parse_fraction(t) for t in lines[0][1:]]
        c, const = head[:-1], head[-1]
        rows, rhs = [], []
        for toks in lines[1:]:
            if len(toks) < 2 or toks[-2] != ">=":
                raise DomainError(f"bad constraint line: {' '.join(toks)}")
            rows.append([parse_fraction(t) for t in toks[:-2]])
            rhs.append(parse_fraction(toks[-1]))
        return cls.build(c, rows, rhs, const)


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "unbounded" | "infeasible"
    assignment: tuple[Fraction, ...] = ()
    value: Fraction | None = None
    dual: tuple[Fraction, ...] = ()  # optimal: dual vector; infeasible: Farkas vector
    ray: tuple[Fraction, ...] = ()
    pivots: int = 0
    notes: dict = field(default_factory=dict)


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    piv = T[r][c]
    row = [v / piv for v in T[r]]
    T[r] = row
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            Ti = T[i]
            T[i] = [a - f * b for a, b in zip(Ti, row)]


def _reduced(T, basis, cost, allowed) -> list[Fraction]:
    return [
        cost[j] - sum((cost[basis[k]] * T[k][j] for k in range(len(T))), Fraction(0)) if allowed[j] else Fraction(0)
        for j in range(len(cost))
    ]


def _run(T, basis, cost, allowed) -> tuple[str, int | None, int]:
    """Maximise with Bland's rule.  Returns (status, unbounded column, pivots)."""
    pivots = 0
    while True:
        red = _reduced(T, basis, cost, allowed)
        enter = next((j for j in range(len(cost)) if red[j] > 0), None)
        if enter is None:
            return "optimal", None, pivots
        best, leave = None, None
        for k in range(len(T)):
            a = T[k][enter]
            if a > 0:
                ratio = T[k][-1] / a
                if best is None or ratio < best or (ratio == best and basis[k] < basis[leave]):
                    best, leave = ratio, k
        if leave is None:
            return "unbounded", enter, pivots
        _pivot(T, leave, enter)
        basis[leave] = enter
        pivots += 1


def _solve_transposed(cols: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve B^T w = rhs where B has the given columns (exact Gauss-Jordan)."""
    m = len(cols)
    M = [[cols[j][i] for i in range(m)] + [rhs[j]] for j in range(m)]
    # rows of M are columns of B: M w = rhs
    for c in range(m):
        p = next(r for r in range(c, m) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(m):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[i][-1] for i in range(m)]


def solve(p: LpProblem) -> LpSolution:
    nv, m = p.num_vars, len(p.rows)
    if nv > MAX_VARS or m > MAX_CONSTRAINTS:
        raise DomainError(f"LP too large: {nv} variables, {m} constraints")
    # standard form over (a, s, art): D_i (G_i a - s_i) = D_i h_i >= 0, with
    # D_i = -1 when h_i <= 0 so the slack starts basic with coefficient +1
    flip = [Fraction(-1) if h <= 0 else Fraction(1) for h in p.rhs]
    need_art = [h > 0 for h in p.rhs]
    arts = [i for i in range(m) if need_art[i]]
    N = nv + m + len(arts)
    T: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(m):
        row = [Fraction(0)] * (N + 1)
        for j in range(nv):
            row[j] = flip[i] * p.rows[i][j]
        row[nv + i] = -flip[i]
        row[-1] = flip[i] * p.rhs[i]
        if need_art[i]:
            k = nv + m + arts.index(i)
            row[k] = Fraction(1)
            basis.append(k)
        else:
            basis.append(nv + i)
        T.append(row)

    pivots = 0
    # phase 1: maximise -sum(art)
    if arts:
        cost1 = [Fraction(0)] * (nv + m) + [Fraction(-1)] * len(arts)
        _, _, k = _run(T, basis, cost1, [True] * N)
        pivots += k
        phase1 = -sum((T[r][-1] for r in range(m) if basis[r] >= nv + m), Fraction(0))
        if phase1 < 0:
            cols = [_std_column(p, flip, arts, b) for b in basis]
            w1 = _solve_transposed(cols, [cost1[b] for b in basis])
            farkas = tuple(-flip[i] * w1[i] for i in range(m))
            _check_farkas(p, farkas)
            return LpSolution("infeasible", dual=farkas, pivots=pivots)
        # drive zero-level artificials out of the basis
        r = 0
        while r < len(T):
            if basis[r] >= nv + m:
                c = next((j for j in range(nv + m) if T[r][j] != 0), None)
                if c is None:
                    # redundant row
                    del T[r]
                    del basis[r]
                    continue
                _pivot(T, r, c)
                basis[r] = c
                pivots += 1
            r += 1

    allowed = [j < nv + m for j in range(N)]
    cost = list(p.objective) + [Fraction(0)] * (m + len(arts))
    status, enter, k = _run(T, basis, cost, allowed)
    pivots += k
    if status == "unbounded":
        direction = [Fraction(0)] * N
        direction[enter] = Fraction(1)
        for r, b in enumerate(basis):
            direction[b] = -T[r][enter]
        ray = tuple(direction[:nv])
        _check_ray(p, ray)
        return LpSolution("unbounded", ray=ray, pivots=pivots)

    x = [Fraction(0)] * N
    for r, b in enumerate(basis):
        x[b] = T[r][-1]
    a = tuple(x[:nv])
    value = p.value(a)
    # dual from B^T w = c_B over the rows still present
    rows_left = _rows_in_tableau(p, flip, T, basis, nv, m)
    cols = [[_std_column(p, flip, arts, b)[i] for i in rows_left] for b in basis]
    w = _solve_transposed(cols, [cost[b] for b in basis])
    dual = [Fraction(0)] * m
    for w_i, i in zip(w, rows_left):
        dual[i] = -flip[i] * w_i
    dual_t = tuple(dual)
    _check_optimal(p, a, value, dual_t)
    return LpSolution("optimal", a, value, dual_t, pivots=pivots)


def _std_column(p: LpProblem, flip, arts, j: int) -> list[Fraction]:
    nv, m = p.num_vars, len(p.rows)
    if j < nv:
        return [flip[i] * p.rows[i][j] for i in range(m)]
    if j < nv + m:
        col = [Fraction(0)] * m
        col[j - nv] = -flip[j - nv]
        return col
    col = [Fraction(0)] * m
    col[arts[j - nv - m]] = Fraction(1)
    return col


def _rows_in_tableau(p, flip, T, basis, nv, m) -> list[int]:
    """Indices of original rows that survived redundancy removal.

    With all rows present this is every row; otherwise pick a maximal set of
    original rows whose basis submatrix is nonsingular.
    """
    if len(T) == m:
        return list(range(m))
    chosen: list[int] = []
    for i in range(m):
        trial = chosen + [i]
        cols = [[_std_column(p, flip, [], b)[r] if b < nv + m else Fraction(0) for r in trial] for b in basis]
        if _rank(cols) == len(trial):
            chosen = trial
        if len(chosen) == len(T):
            break
    return chosen


def _rank(cols: list[list[Fraction]]) -> int:
    M = [list(c) for c in cols]
    rank, ncol = 0, len(M[0]) if M else 0
    for c in range(ncol):
        p = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def _check_optimal(p: LpProblem, a, value, u) -> None:
    """u >= 0, -G^T u >= c, and -h.u + const == value (strong duality)."""
    if not p.feasible(a):
        raise InvariantError("lp-primal-feasible")
    if any(v < 0 for v in u):
        raise InvariantError("lp-dual-sign")
    for j in range(p.num_vars):
        if -sum((u[i] * p.rows[i][j] for i in range(len(u))), Fraction(0)) < p.objective[j]:
            raise InvariantError("lp-dual-feasible", f"column {j}")
    if -_dot(p.rhs, u) + p.constant != value:
        raise InvariantError("lp-duality-gap")


def _check_farkas(p: LpProblem, y) -> None:
    """y >= 0, -G^T y >= 0 and -h.y < 0: no a >= 0 can satisfy G a >= h."""
    if any(v < 0 for v in y):
        raise InvariantError("farkas-sign")
    for j in range(p.num_vars):
        if -sum((y[i] * p.rows[i][j] for i in range(len(y))), Fraction(0)) < 0:
            raise InvariantError("farkas-columns", f"column {j}")
    if not -_dot(p.rhs, y) < 0:
        raise InvariantError("farkas-rhs")


def _check_ray(p: LpProblem, r) -> None:
    if any(v < 0 for v in r) or any(_dot(row, r) < 0 for row in p.rows):
        raise InvariantError("ray-feasible")
    if not _dot(p.objective, r) > 0:
        raise InvariantError("ray-improving")


def delsarte_problem(n: int, degrees: Sequence[int] | None = None) -> LpProblem:
    """Variables a_k, k = n/2..n; rows C(n,d) + sum_k a_k K_d^n(k) >= 0 for
    each listed degree d (default all d = 0..n); objective 1 + sum_k a_k."""
    if n % 2 or n < 2:
        raise DomainError(f"Delsarte LP needs even n >= 2, got {n}")
    if n > 64:
        raise DomainError("Delsarte LP supports n <= 64")
    ks = list(range(n // 2, n + 1))
    degs = list(range(n + 1)) if degrees is None else list(degrees)
    rows, rhs = [], []
    for d in degs:
        row = kraw_row(n, d)
        rows.append([row[k] for k in ks])
        rhs.append(-binom(n, d))
    return LpProblem.build([1] * len(ks), rows, rhs, 1)


def delsarte_theta_prime(n: int) -> LpSolution:
    """Exact optimum of the LP for theta' of the graph joining strings at
    distance below n/2; must not exceed 2n."""
    sol = solve(delsarte_problem(n))
    if sol.status != "optimal":
        raise InvariantError("delsarte-status", sol.status)
    if sol.value > 2 * n:
        raise InvariantError("delsarte-le-2n", f"{sol.value} > {2 * n}")
    return sol


def delsarte_degree_one(n: int) -> LpSolution:
    """Relaxation keeping only the degree-1 row n + sum_k a_k (n - 2k) >= 0.

    Since K_1^n(n/2) = 0, a_{n/2} is unconstrained and this LP is unbounded.
    """
    return solve(delsarte_problem(n, degrees=[1]))
