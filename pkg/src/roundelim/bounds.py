"""Closed-form communication bounds and the combinatorial checks behind the
classical lower bound for the k-subset list problem.

The list lower bound goes through cover-free families: from any correct
protocol for ([N] choose k)-lists, the transcripts consistent with each
Alice input form a (k-1)-cover-free family of at least N sets, and cover-free
families need many points.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

from roundelim.errors import DomainError, InvariantError
from roundelim.graphs import distance_graph, max_clique
from roundelim.numerics import binom, entropy
from roundelim.protocols.classical import ClassicalProtocol, check_list_protocol, list_instances

COVER_FREE_MAX_MEMBERS = 20
COVER_FREE_MAX_R = 4
KLEITMAN_MAX_N = 14
KLEITMAN_EXHAUSTIVE_MAX_N = 6


@dataclass(frozen=True)
class SetFamily:
    """Labelled member sets over a common ground set."""

    ground: tuple
    labels: tuple
    members: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.members):
            raise DomainError("one label per member set")
        g = set(self.ground)
        for lab, S in zip(self.labels, self.members):
            if not S <= g:
                raise DomainError(f"member {lab!r} leaves the ground set")

    @classmethod
    def of(cls, members: Sequence[Iterable[Hashable]], labels: Sequence | None = None) -> "SetFamily":
        sets = tuple(frozenset(m) for m in members)
        ground = tuple(sorted(set().union(*sets), key=repr)) if sets else ()
        labels = tuple(range(len(sets))) if labels is None else tuple(labels)
        return cls(ground, labels, sets)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def distinct_count(self) -> int:
        return len(set(self.members))


def cover_free_check(F: SetFamily, r: int) -> tuple[bool, tuple | None]:
    """Is no member covered by the union of r others?

    Exhaustive over F_0 and r-subsets of the remaining members.  Returns
    (True, None) or (False, (label_0, label_1, ..., label_r)).
    """
    if r < 1:
        raise DomainError(f"r must be positive, got {r}")
    if len(F) < r + 1:
        raise DomainError(f"need at least r + 1 = {r + 1} members, got {len(F)}")
    if len(F) > COVER_FREE_MAX_MEMBERS or r > COVER_FREE_MAX_R:
        raise DomainError(
            f"brute force limited to {COVER_FREE_MAX_MEMBERS} members and r <= {COVER_FREE_MAX_R}")
    index = {g: i for i, g in enumerate(F.ground)}
    masks = [sum(1 << index[g] for g in S) for S in F.members]
    m = len(masks)
    for i0 in range(m):
        others = [i for i in range(m) if i != i0]
        for combo in itertools.combinations(others, r):
            cover = 0
            for i in combo:
                cover |= masks[i]
            if masks[i0] & ~cover == 0:
                return False, tuple(F.labels[i] for i in (i0, *combo))
    return True, None


def _alice_consistent(P: ClassicalProtocol, x, transcript: tuple[int, ...]) -> bool:
    """Would Alice with input x send every Alice message of the transcript,
    given the messages before it?"""
    for j, r in enumerate(P.rounds):
        if r.speaker == "A" and r.message(x, transcript[:j]) != transcript[j]:
            return False
    return True


def transcripts_to_family(P: ClassicalProtocol, lists: Sequence[frozenset]) -> SetFamily:
    """F_x = transcripts (over all instances) consistent with Alice holding x.

    Bob's messages depend only on the list, so a transcript lies in F_x
    exactly when replaying Alice's message functions on x reproduces her
    messages in it.
    """
    bad = check_list_protocol(P, lists)
    if bad is not None:
        x, L, out = bad
        raise DomainError(f"{P.name} is wrong on x={x}, L={sorted(L)}: output {out}")
    transcripts = sorted({P.run(x, L)[0] for x, L in list_instances(lists)})
    universe = sorted(set().union(*lists))
    members = [frozenset(T for T in transcripts if _alice_consistent(P, x, T)) for x in universe]
    return SetFamily(tuple(transcripts), tuple(universe), tuple(members))


# ---- closed-form bounds ------------------------------------------------------

@dataclass
class BoundRow:
    name: str
    kind: str  # "lower" or "upper"
    value: float
    constants: dict = field(default_factory=dict)

    def to_dict(self, params: dict) -> dict:
        return {**params, "bound": self.name, "kind": self.kind, "value": self.value,
                "constants": dict(self.constants)}


@dataclass
class BoundReport:
    params: dict
    rows: list[BoundRow]

    def row(self, name: str) -> BoundRow:
        return next(r for r in self.rows if r.name == name)

    def to_rows(self) -> list[dict]:
        return [r.to_dict(self.params) for r in self.rows]


def dyachkov_rykov(N: int, r: int, c: float = 1.0) -> float:
    """Minimum ground-set size c r^2 log N / log r of an r-cover-free
    family with N members (r >= 2)."""
    if r < 2 or N < r + 1:
        raise DomainError(f"needs r >= 2 and N >= r + 1, got N={N}, r={r}")
    return c * r * r * math.log2(N) / math.log2(r)


def bound_formulas(N: int, k: int, chi: int | None = None, omega: int | None = None,
                   c: float = 1.0, slack: float = 1.0) -> BoundReport:
    """Evaluate the bounds for the list problem with chromatic number chi
    of the list graph and largest list size omega.

    For ([N] choose k)-lists the list graph is complete, so chi defaults to
    N and omega to k.  ``c`` is the cover-free constant and ``slack`` stands
    for every unspecified O(1) / Omega(1) term.
    """
    if N < 2 or k < 2 or k > N:
        raise DomainError(f"need 2 <= k <= N, got N={N}, k={k}")
    chi = N if chi is None else chi
    omega = k if omega is None else omega
    if chi < 2 or omega < 2:
        raise DomainError("chi and omega must be at least 2")
    if c <= 0 or slack < 0:
        raise DomainError("c must be positive and slack nonnegative")
    llchi = math.log2(math.log2(chi))
    lomega = math.log2(omega)
    llomega = math.log2(lomega) if omega > 2 else 0.0
    rows = [
        BoundRow("one-way-classical-lower", "lower", max(llchi, lomega)),
        BoundRow("two-round-hashing-upper", "upper", llchi + 3 * lomega + 4),
        BoundRow("four-round-upper", "upper", llchi + 2 * lomega + 3 * llomega + 7),
        BoundRow("quantum-lower", "lower", max(slack * llchi, lomega), {"slack": slack}),
    ]
    # Cover-free route: 2^(C+1) - 1 >= c (k-1)^2 log N / log(k-1).  The
    # log log (k-1) term is dropped when k - 1 < 2 (it is then zero or undefined).
    lk = math.log2(k - 1)
    llk = math.log2(lk) if k - 1 >= 2 else 0.0
    rows.append(BoundRow("list-lower", "lower",
                         math.log2(math.log2(N)) + 2 * lk - llk - slack, {"slack": slack}))
    if k >= 3 and N >= k:
        need = dyachkov_rykov(N, k - 1, c)
        rows.append(BoundRow("cover-free-transcripts", "lower", need, {"c": c}))
        rows.append(BoundRow("cover-free-bits-lower", "lower", math.log2(need + 1) - 1, {"c": c}))
    report = BoundReport({"N": N, "k": k, "chi": chi, "omega": omega}, rows)
    lowers = [r for r in rows if r.kind == "lower" and r.name != "cover-free-transcripts"]
    uppers = [r for r in rows if r.kind == "upper"]
    for lo in lowers:
        for up in uppers:
            if lo.value > up.value + 1e-12:
                raise InvariantError("bound-ordering", f"{lo.name} {lo.value} > {up.name} {up.value}")
    return report


# ---- Kleitman's diameter bound ---------------------------------------------

@dataclass
class KleitmanReport:
    n: int
    r: int
    bound: int
    exhaustive: bool
    largest_found: int
    ball_size: int
    ball_diameter: int
    greedy_sizes: list[int]

    @property
    def holds(self) -> bool:
        return self.largest_found <= self.bound and max(self.greedy_sizes, default=0) <= self.bound


def kleitman_bound(n: int, r: int) -> int:
    return sum(binom(n, j) for j in range(r + 1))


def _diameter(points: Sequence[int]) -> int:
    a = np.asarray(points, dtype=np.uint64)
    if len(a) < 2:
        return 0
    return int(np.bitwise_count(a[:, None] ^ a[None, :]).max())


def _greedy_diameter_set(n: int, r: int, rng: random.Random) -> list[int]:
    """Random order greedy: keep a point if it stays within 2r of all kept."""
    order = list(range(1 << n))
    rng.shuffle(order)
    pts = np.asarray(order, dtype=np.uint64)
    alive = np.ones(len(pts), dtype=bool)
    kept = []
    for idx in range(len(pts)):
        if not alive[idx]:
            continue
        p = pts[idx]
        kept.append(int(p))
        alive &= np.bitwise_count(pts ^ p) <= 2 * r
    return kept


def kleitman_check(n: int, r: int, samples: int = 20, seed: int = 0) -> KleitmanReport:
    """Check |A| <= sum_{j <= r} C(n, j) for sets A of diameter 2r.

    For n <= 6 the largest such set is found exactly (maximum clique of the
    graph joining strings at distance <= 2r).  For larger n only witnesses
    are checked: the radius-r Hamming ball and seeded random greedy sets.
    The bound needs 2r < n; at 2r = n the whole cube has diameter 2r.
    """
    if n < 1 or r < 0:
        raise DomainError(f"bad parameters n={n}, r={r}")
    if n > KLEITMAN_MAX_N:
        raise DomainError(f"kleitman_check limited to n <= {KLEITMAN_MAX_N}")
    if not 2 * r < n:
        raise DomainError(f"need 2r < n, got n={n}, r={r}")
    bound = kleitman_bound(n, r)
    ball = [x for x in range(1 << n) if bin(x).count("1") <= r]
    exhaustive = n <= KLEITMAN_EXHAUSTIVE_MAX_N
    if exhaustive:
        largest = 1 if r == 0 else len(max_clique(distance_graph(n, range(1, 2 * r + 1))))
    else:
        largest = len(ball)
    rng = random.Random(seed)
    greedy = [len(_greedy_diameter_set(n, r, rng)) for _ in range(samples)]
    report = KleitmanReport(n, r, bound, exhaustive, largest, len(ball), _diameter(ball), greedy)
    if len(ball) != bound or report.ball_diameter > 2 * r:
        raise InvariantError("kleitman-ball", f"ball size {len(ball)}, diameter {report.ball_diameter}")
    if not report.holds:
        raise InvariantError("kleitman-bound", f"found {largest} / {max(greedy)} > {bound}")
    return report


def entropy_gap(p: float) -> float:
    """H(p) + H(1/2 - sqrt((1 - p) p)) - 1, positive on (0, 1/2)."""
    if not 0.0 < p < 0.5:
        raise DomainError(f"p must lie in (0, 1/2), got {p}")
    gap = entropy(p) + entropy(0.5 - math.sqrt((1 - p) * p)) - 1.0
    if not gap > 0:
        raise InvariantError("entropy-gap-positive", f"gap {gap} at p={p}")
    return gap
