"""Exact quantum protocols for promise equality EQ-(n, d).

Alice holds x, Bob holds y, with x = y or dist(x, y) = d.  Bob must decide
which.  The protocols run Grover search for an index where x and y differ,
splitting each query U_{x xor y} = U_x U_y between the two parties.
"""

from __future__ import annotations

import math

from roundelim.errors import DomainError, PromiseViolation
from roundelim.graphs import hamming
from roundelim.numerics import ceil_log2
from roundelim.qsim import (
    StateVector,
    apply_diffusion,
    apply_param_diffusion,
    apply_phase_bit_query,
    apply_query,
    apply_xor_query,
    exact_grover_params,
    measure_branches,
    uniform,
)
from roundelim.protocols.run import ProtocolRun

EQUAL = "equal"
NOT_EQUAL = "not equal"


def _check_inputs(x: int, y: int, n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if not (0 <= x < 1 << n and 0 <= y < 1 << n):
        raise DomainError(f"inputs must be {n}-bit strings")


def _promise(x: int, y: int, d: int) -> None:
    dist = hamming(x, y)
    if dist not in (0, d):
        raise PromiseViolation(f"distance {dist} is neither 0 nor {d}")


def _finish(run: ProtocolRun, st: StateVector, x: int, y: int, L: int) -> None:
    """Alice measures the index, sends (i*, x_{i*}); Bob compares with y_{i*}."""
    run.send("A", qubits=L + 1, note="index i* and bit x_i*")
    for br in measure_branches(st, "i"):
        i = br.outcome
        xi, yi = x >> i & 1, y >> i & 1
        run.branch(f"i={i}", br.probability, EQUAL if xi == yi else NOT_EQUAL)


def eq_two_round(x: int, y: int, n: int) -> ProtocolRun:
    """Two-round protocol for EQ-(n, n/4) with 2 ceil(log n) + 1 qubits.

    Bob sends U_y|s>.  Alice applies U_x then the diffusion G.  For
    |x xor y| = n/4 one Grover iteration lands exactly on the uniform
    superposition of differing indices; for x = y the state stays |s>.
    """
    _check_inputs(x, y, n)
    if n % 4:
        raise DomainError(f"eq_two_round needs n divisible by 4, got {n}")
    d = n // 4
    _promise(x, y, d)
    L = ceil_log2(n)
    run = ProtocolRun("eq2", n, d, {"x": x, "y": y}, EQUAL if x == y else NOT_EQUAL)
    st = StateVector([("i", n)], uniform(n))
    st = apply_query(st, y, "i")
    run.send("B", qubits=L, note="U_y|s>")
    st = apply_query(st, x, "i")
    st = apply_diffusion(st, "i")
    st.check_norm()
    _finish(run, st, x, y, L)
    return run


def eq_padded(x: int, y: int, n: int, d: int) -> ProtocolRun:
    """EQ-(n, d) for n/4 <= d < n/2 by padding both strings with 4d - n
    zeros and running the two-round protocol on 4d bits."""
    _check_inputs(x, y, n)
    if n % 2 or d % 2:
        raise DomainError(f"eq_padded needs even n and d, got n={n}, d={d}")
    if not (n <= 4 * d and 2 * d < n):
        raise DomainError(f"eq_padded needs 1/4 <= d/n < 1/2, got n={n}, d={d}")
    _promise(x, y, d)
    inner = eq_two_round(x, y, 4 * d)
    run = ProtocolRun("eq-pad", n, d, {"x": x, "y": y}, inner.expected,
                      inner.messages, inner.branches, {"padded_n": 4 * d})
    alpha = d / n
    bound = 2 * ceil_log2(n) + 2 * math.ceil(math.log2(4 * alpha) - 1e-12) + 1
    run.extra["qubit_bound"] = bound
    return run


def multiround_starter(ell: int) -> str:
    """Who sends first so that Alice holds the state after the ell - 1
    plain Grover rounds: each plain round is one message, so Bob starts
    exactly when ell - 1 is odd."""
    return "B" if (ell - 1) % 2 else "A"


def eq_multiround(x: int, y: int, n: int, d: int) -> ProtocolRun:
    """EQ-(n, d) for d < n/4 via exact Grover with ell queries.

    ell - 1 plain iterations take one message each (the parties alternate
    who applies their half of the query first).  The final phase query
    V_z(varphi) is simulated as Q_x R_y(varphi) Q_x on an extra qubit,
    costing a message there and one back; then Alice applies G(phi),
    measures and sends (i*, x_{i*}).
    """
    _check_inputs(x, y, n)
    if n % 2 or d % 2 or d <= 0:
        raise DomainError(f"eq_multiround needs even n and even d > 0, got n={n}, d={d}")
    if not 4 * d < n:
        raise DomainError(f"eq_multiround needs d/n < 1/4, got n={n}, d={d}")
    _promise(x, y, d)
    params = exact_grover_params(n, d)
    ell = params.ell
    L = ceil_log2(n)
    run = ProtocolRun("eq-multi", n, d, {"x": x, "y": y}, EQUAL if x == y else NOT_EQUAL)
    run.extra.update({"ell": ell, "phi": params.phi, "varphi": params.varphi})
    own = {"A": x, "B": y}
    other = {"A": "B", "B": "A"}

    holder = multiround_starter(ell)
    run.extra["starter"] = holder
    st = StateVector([("i", n)], uniform(n))
    st = apply_query(st, own[holder], "i")
    for k in range(1, ell):
        run.send(holder, qubits=L, note=f"plain iteration {k}")
        holder = other[holder]
        st = apply_query(st, own[holder], "i")
        st = apply_diffusion(st, "i")
        if k < ell - 1:
            st = apply_query(st, own[holder], "i")
    if holder != "A":
        raise AssertionError("Alice must hold the state after the plain iterations")

    st = st.add_register("b", [1.0, 0.0])
    st = apply_xor_query(st, x, "i", "b")
    run.send("A", qubits=L + 1, note="Q_x applied")
    st = apply_phase_bit_query(st, y, params.varphi, "i", "b")
    run.send("B", qubits=L + 1, note="R_y(varphi) applied")
    st = apply_xor_query(st, x, "i", "b")
    leftover = float((abs(st.amps[:, 1]) ** 2).sum())
    if leftover > 1e-20:
        raise AssertionError(f"auxiliary qubit not returned to |0>: weight {leftover}")
    st = StateVector([("i", n)], st.amps[:, 0])
    st = apply_param_diffusion(st, params.phi, "i")
    st.check_norm()
    _finish(run, st, x, y, L)
    return run


def multiround_cost(n: int, ell: int) -> int:
    """Qubits actually sent by eq_multiround: (ell - 1) L + 3 (L + 1)."""
    L = ceil_log2(n)
    return (ell - 1) * L + 3 * (L + 1)
