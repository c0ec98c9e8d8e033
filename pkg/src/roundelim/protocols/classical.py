"""Deterministic classical protocols, the one-round collapse for promise
equality, and fixtures to feed both.

A protocol is a list of rounds (speaker, bit length, message function).  A
message function receives the speaker's own input and the transcript so
far (a tuple of ints) and returns an int below 2**length.  Bob's output
function sees his input and the full transcript.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Sequence

from roundelim.errors import DomainError
from roundelim.graphs import hamming

Transcript = tuple[int, ...]
MessageFn = Callable[[Any, Transcript], int]
OutputFn = Callable[[Any, Transcript], Any]


@dataclass(frozen=True)
class Round:
    speaker: str  # "A" or "B"
    length: int
    message: MessageFn


@dataclass(frozen=True)
class ClassicalProtocol:
    name: str
    rounds: tuple[Round, ...]
    output: OutputFn

    @property
    def transcript_length(self) -> int:
        return sum(r.length for r in self.rounds)

    def run(self, x, y) -> tuple[Transcript, Any]:
        transcript: list[int] = []
        for r in self.rounds:
            own = x if r.speaker == "A" else y
            m = r.message(own, tuple(transcript))
            if not 0 <= m < 1 << r.length:
                raise DomainError(f"{self.name}: message {m} does not fit {r.length} bits")
            transcript.append(m)
        t = tuple(transcript)
        return t, self.output(y, t)


EQUAL, NOT_EQUAL = True, False


def equality_promise(inputs: Sequence[Hashable], distinct_pairs: Iterable[tuple]) -> list[tuple]:
    """All (x, x) plus the listed distinct pairs in both orders."""
    pairs = {(x, x) for x in inputs}
    for x, y in distinct_pairs:
        pairs.add((x, y))
        pairs.add((y, x))
    return sorted(pairs)


def distance_pairs(nbits: int, d: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(1 << nbits) for y in range(x + 1, 1 << nbits) if hamming(x, y) == d]


def first_error(P: ClassicalProtocol, promise: Iterable[tuple]) -> tuple | None:
    for x, y in promise:
        _, out = P.run(x, y)
        if out != (x == y):
            return (x, y, out)
    return None


def _pack(msgs: Sequence[int], lengths: Sequence[int]) -> int:
    out, shift = 0, 0
    for m, ln in zip(msgs, lengths):
        out |= m << shift
        shift += ln
    return out


def _unpack(word: int, lengths: Sequence[int]) -> list[int]:
    out, shift = [], 0
    for ln in lengths:
        out.append(word >> shift & ((1 << ln) - 1))
        shift += ln
    return out


def round_collapse(P: ClassicalProtocol, promise: Iterable[tuple]) -> ClassicalProtocol:
    """One-round protocol for the same promise-equality instance.

    Alice runs P against an imaginary Bob holding y = x and sends the
    whole simulated transcript.  Bob replays it with his real input: at
    the first of his own messages that differs from the simulated one he
    answers "not equal"; if none differs he answers as P would.
    """
    promise = list(promise)
    bad = first_error(P, promise)
    if bad is not None:
        x, y, out = bad
        raise DomainError(f"{P.name} is wrong on the promise: x={x}, y={y} gave {out}")
    lengths = [r.length for r in P.rounds]

    def alice(x, _t):
        t, _ = P.run(x, x)
        return _pack(t, lengths)

    def bob(y, t):
        sim = _unpack(t[0], lengths)
        replay: list[int] = []
        for r, m in zip(P.rounds, sim):
            if r.speaker == "B" and r.message(y, tuple(replay)) != m:
                return NOT_EQUAL
            replay.append(m)
        return P.output(y, tuple(replay))

    Q = ClassicalProtocol(f"collapse({P.name})", (Round("A", sum(lengths), alice),), bob)
    bad = first_error(Q, promise)
    if bad is not None:
        raise AssertionError(f"collapsed protocol wrong on {bad}")
    return Q


# ---- promise-equality fixtures -------------------------------------------

def colouring_protocol() -> tuple[ClassicalProtocol, list[tuple]]:
    """One round on 4-bit inputs at distance 1: Alice sends her parity."""
    P = ClassicalProtocol(
        "parity-colouring",
        (Round("A", 1, lambda x, t: bin(x).count("1") & 1),),
        lambda y, t: t[0] == bin(y).count("1") & 1,
    )
    return P, equality_promise(range(16), distance_pairs(4, 1))


def parity_exchange_protocol() -> tuple[ClassicalProtocol, list[tuple]]:
    """Two rounds on 4-bit inputs at distance 2.

    Bob sends the parities of bit pairs (0,1) and (2,3).  Alice replies
    with a flag (her pair parities differ) and x0 xor x2.  Equal iff the
    flag is clear and x0 xor x2 matches.
    """
    def pair_par(v):
        return ((v ^ v >> 1) & 1) | (((v >> 2 ^ v >> 3) & 1) << 1)

    def alice(x, t):
        flag = int(pair_par(x) != t[0])
        return flag | ((x ^ x >> 2) & 1) << 1

    def out(y, t):
        return (t[1] & 1) == 0 and (t[1] >> 1) == ((y ^ y >> 2) & 1)

    P = ClassicalProtocol(
        "parity-exchange",
        (Round("B", 2, lambda y, t: pair_par(y)), Round("A", 2, alice)),
        out,
    )
    return P, equality_promise(range(16), distance_pairs(4, 2))


def bisection_protocol() -> tuple[ClassicalProtocol, list[tuple]]:
    """Three rounds on 3-bit inputs, full equality.

    Alice sends x0, Bob sends y1, Alice sends x2 and whether x1 = y1.
    """
    P = ClassicalProtocol(
        "bisection",
        (
            Round("A", 1, lambda x, t: x & 1),
            Round("B", 1, lambda y, t: y >> 1 & 1),
            Round("A", 2, lambda x, t: (x >> 2 & 1) | int((x >> 1 & 1) == t[1]) << 1),
        ),
        lambda y, t: t[0] == (y & 1) and (t[2] >> 1) == 1 and (t[2] & 1) == (y >> 2 & 1),
    )
    return P, equality_promise(range(8), itertools.combinations(range(8), 2))


def three_round_parity_protocol() -> tuple[ClassicalProtocol, list[tuple]]:
    """Three rounds on 4-bit inputs at distance 1.

    Alice sends x0 xor x1; Bob says whether it matches his; Alice sends
    x2 xor x3.
    """
    P = ClassicalProtocol(
        "three-round-parity",
        (
            Round("A", 1, lambda x, t: (x ^ x >> 1) & 1),
            Round("B", 1, lambda y, t: int(t[0] == ((y ^ y >> 1) & 1))),
            Round("A", 1, lambda x, t: (x >> 2 ^ x >> 3) & 1),
        ),
        lambda y, t: t[1] == 1 and t[2] == ((y >> 2 ^ y >> 3) & 1),
    )
    return P, equality_promise(range(16), distance_pairs(4, 1))


def broken_protocol() -> tuple[ClassicalProtocol, list[tuple]]:
    """Wrong on purpose: only compares the low bit."""
    P = ClassicalProtocol(
        "broken",
        (Round("A", 1, lambda x, t: x & 1), Round("B", 1, lambda y, t: 0)),
        lambda y, t: t[0] == (y & 1),
    )
    return P, equality_promise(range(4), itertools.combinations(range(4), 2))


def equality_fixtures() -> list[tuple[ClassicalProtocol, list[tuple]]]:
    return [
        colouring_protocol(),
        parity_exchange_protocol(),
        bisection_protocol(),
        three_round_parity_protocol(),
    ]


# ---- list-problem fixtures -----------------------------------------------

def k_subsets(N: int, k: int) -> list[frozenset]:
    return [frozenset(c) for c in itertools.combinations(range(N), k)]


def list_instances(lists: Sequence[frozenset]) -> list[tuple[int, frozenset]]:
    return [(x, L) for L in lists for x in sorted(L)]


def announce_protocol(N: int) -> ClassicalProtocol:
    """Alice writes x down in full."""
    bits = max(1, (N - 1).bit_length())
    return ClassicalProtocol(
        "announce",
        (Round("A", bits, lambda x, t: x),),
        lambda L, t: t[0],
    )


def perfect_hash_family(N: int, k: int) -> list[tuple[int, ...]]:
    """Greedy family of maps [N] -> [k] such that every k-subset is
    mapped injectively by some member."""
    todo = set(k_subsets(N, k))
    family: list[tuple[int, ...]] = []
    candidates = list(itertools.product(range(k), repeat=N))
    while todo:
        best, covered = None, set()
        for h in candidates:
            c = {S for S in todo if len({h[i] for i in S}) == len(S)}
            if len(c) > len(covered):
                best, covered = h, c
        if best is None:
            raise AssertionError("no hash function separates the remaining subsets")
        family.append(best)
        todo -= covered
    return family


def hashing_protocol(N: int, k: int) -> ClassicalProtocol:
    """Two rounds: Bob names a hash that is injective on his list, Alice
    replies with the hash of x, Bob inverts it on the list."""
    family = perfect_hash_family(N, k)
    jbits = max(1, (len(family) - 1).bit_length())
    vbits = max(1, (k - 1).bit_length())

    def bob(L, t):
        return next(j for j, h in enumerate(family) if len({h[i] for i in L}) == len(L))

    def out(L, t):
        h = family[t[0]]
        return next(w for w in L if h[w] == t[1])

    return ClassicalProtocol(
        f"hash({N},{k})",
        (Round("B", jbits, bob), Round("A", vbits, lambda x, t: family[t[0]][x])),
        out,
    )


def check_list_protocol(P: ClassicalProtocol, lists: Sequence[frozenset]) -> tuple | None:
    for x, L in list_instances(lists):
        _, out = P.run(x, L)
        if out != x:
            return (x, L, out)
    return None
