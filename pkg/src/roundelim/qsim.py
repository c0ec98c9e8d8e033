"""Dense state-vector simulator with the gates the protocols need.

Registers have arbitrary dimension (not only powers of two).  Measurement
enumerates every outcome branch instead of sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from roundelim.errors import DomainError, InvariantError

NORM_TOL = 1e-12
BRANCH_TOL = 1e-10
MAX_AMPLITUDES = 1 << 24


class StateVector:
    """Amplitudes over an ordered list of named registers.

    Internally the amplitudes are an ndarray of shape (dim_1, ..., dim_k).
    """

    def __init__(self, registers: Sequence[tuple[str, int]], amplitudes=None):
        self.registers = [(str(name), int(dim)) for name, dim in registers]
        names = [r[0] for r in self.registers]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate register names {names}")
        shape = tuple(dim for _, dim in self.registers)
        size = int(np.prod(shape)) if shape else 1
        if size > MAX_AMPLITUDES:
            raise DomainError(f"state with {size} amplitudes is too large")
        if amplitudes is None:
            self.amps = np.zeros(shape, dtype=complex)
            self.amps[(0,) * len(shape)] = 1.0
        else:
            self.amps = np.asarray(amplitudes, dtype=complex).reshape(shape).copy()

    @classmethod
    def basis(cls, registers, values: Sequence[int]) -> "StateVector":
        st = cls(registers)
        st.amps[...] = 0
        st.amps[tuple(values)] = 1.0
        return st

    @classmethod
    def product(cls, parts: Sequence[tuple[str, np.ndarray]]) -> "StateVector":
        vec = np.ones(1, dtype=complex)
        for _, v in parts:
            vec = np.kron(vec, np.asarray(v, dtype=complex))
        return cls([(name, len(v)) for name, v in parts], vec)

    def copy(self) -> "StateVector":
        return StateVector(self.registers, self.amps)

    def axis(self, name: str) -> int:
        for i, (r, _) in enumerate(self.registers):
            if r == name:
                return i
        raise DomainError(f"no register named {name!r}")

    def dim(self, name: str) -> int:
        return self.registers[self.axis(name)][1]

    @property
    def vector(self) -> np.ndarray:
        return self.amps.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def check_norm(self, tol: float = NORM_TOL) -> None:
        drift = abs(self.norm() - 1.0)
        if drift > tol:
            raise InvariantError("norm", f"drift {drift:.3e}")

    def add_register(self, name: str, vec) -> "StateVector":
        vec = np.asarray(vec, dtype=complex)
        out = StateVector(self.registers + [(name, len(vec))])
        out.amps = np.multiply.outer(self.amps, vec)
        return out

    def reorder(self, names: Sequence[str]) -> "StateVector":
        axes = [self.axis(n) for n in names]
        out = StateVector([self.registers[a] for a in axes])
        out.amps = np.transpose(self.amps, axes).copy()
        return out

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.vector, other.vector))


def _apply_diag(state: StateVector, register: str, diag: np.ndarray) -> StateVector:
    ax = state.axis(register)
    if len(diag) != state.registers[ax][1]:
        raise DomainError(f"diagonal of length {len(diag)} on register {register!r} of dim {state.registers[ax][1]}")
    shape = [1] * state.amps.ndim
    shape[ax] = len(diag)
    out = state.copy()
    out.amps = state.amps * diag.reshape(shape)
    return out


def apply_unitary(state: StateVector, U: np.ndarray, registers: Sequence[str] | str) -> StateVector:
    """Apply U to the listed registers (in that order, row-major)."""
    if isinstance(registers, str):
        registers = [registers]
    axes = [state.axis(r) for r in registers]
    dims = [state.registers[a][1] for a in axes]
    size = int(np.prod(dims))
    U = np.asarray(U, dtype=complex)
    if U.shape != (size, size):
        raise DomainError(f"unitary of shape {U.shape} on registers of total dim {size}")
    rest = [a for a in range(state.amps.ndim) if a not in axes]
    moved = np.transpose(state.amps, axes + rest).reshape(size, -1)
    new = (U @ moved).reshape(dims + [state.registers[a][1] for a in rest])
    inverse = np.argsort(axes + rest)
    out = state.copy()
    out.amps = np.transpose(new, inverse).copy()
    return out


def _bits(z, length: int) -> np.ndarray:
    if isinstance(z, (int, np.integer)):
        return np.array([(int(z) >> i) & 1 for i in range(length)])
    arr = np.asarray(z, dtype=int)
    if len(arr) != length:
        raise DomainError(f"bitstring of length {len(arr)} for register of dim {length}")
    return arr


def _register_bits(state: StateVector, register: str, z, n: int | None) -> tuple[int, np.ndarray]:
    dim = state.dim(register)
    n = dim if n is None else n
    if n > dim:
        raise DomainError(f"{n} bits do not fit register {register!r} of dim {dim}")
    bits = np.zeros(dim, dtype=int)
    bits[:n] = _bits(z, n)
    return n, bits


def apply_query(state: StateVector, z, register: str, n: int | None = None) -> StateVector:
    """U_z |i> = (-1)^{z_i} |i>; indices >= n (padding) are untouched."""
    _, bits = _register_bits(state, register, z, n)
    return _apply_diag(state, register, 1.0 - 2.0 * bits)


def apply_phase_query(state: StateVector, z, varphi: float, register: str, n: int | None = None) -> StateVector:
    """V_z(varphi) |j> = e^{i varphi z_j} |j>."""
    _, bits = _register_bits(state, register, z, n)
    return _apply_diag(state, register, np.exp(1j * varphi * bits))


def uniform(n: int, dim: int | None = None) -> np.ndarray:
    """|s> = n^{-1/2} sum_{i<n} |i>, zero-padded to ``dim``."""
    dim = n if dim is None else dim
    s = np.zeros(dim, dtype=complex)
    s[:n] = 1.0 / math.sqrt(n)
    return s


def diffusion_matrix(n: int, dim: int | None = None) -> np.ndarray:
    """G = 2|s><s| - I on the first n levels, identity on padding."""
    dim = n if dim is None else dim
    s = uniform(n, dim)
    G = np.eye(dim, dtype=complex)
    G[:n, :n] = 2.0 * np.outer(s[:n], s[:n].conj()) - np.eye(n)
    return G


def dft_matrix(n: int, dim: int | None = None) -> np.ndarray:
    """F_n |j> = n^{-1/2} sum_k omega^{jk} |k>, omega = e^{2 pi i / n};
    identity on padding levels."""
    dim = n if dim is None else dim
    j = np.arange(n)
    F = np.eye(dim, dtype=complex)
    F[:n, :n] = np.exp(2j * math.pi * np.outer(j, j) / n) / math.sqrt(n)
    return F


def param_diffusion_matrix(phi: float, n: int, dim: int | None = None) -> np.ndarray:
    """G(phi) = F_n V_0(phi) F_n^dagger with V_0(phi) = I + (e^{i phi} - 1)|0><0|.

    F_n |0> = |s>, so this equals I + (e^{i phi} - 1)|s><s|; at phi = pi it
    is -G.
    """
    dim = n if dim is None else dim
    F = dft_matrix(n, dim)
    V = np.eye(dim, dtype=complex)
    V[0, 0] = np.exp(1j * phi)
    return F @ V @ F.conj().T


def apply_diffusion(state: StateVector, register: str, n: int | None = None) -> StateVector:
    dim = state.dim(register)
    return apply_unitary(state, diffusion_matrix(dim if n is None else n, dim), register)


def apply_param_diffusion(state: StateVector, phi: float, register: str, n: int | None = None) -> StateVector:
    dim = state.dim(register)
    return apply_unitary(state, param_diffusion_matrix(phi, dim if n is None else n, dim), register)


def apply_dft(state: StateVector, register: str, n: int | None = None, inverse: bool = False) -> StateVector:
    dim = state.dim(register)
    F = dft_matrix(dim if n is None else n, dim)
    return apply_unitary(state, F.conj().T if inverse else F, register)


def apply_xor_query(state: StateVector, x, index: str, bit: str, n: int | None = None) -> StateVector:
    """Q_x |j>|b> = |j>|b xor x_j>."""
    _, bits = _register_bits(state, index, x, n)
    if state.dim(bit) != 2:
        raise DomainError(f"register {bit!r} must be a qubit")
    ai, ab = state.axis(index), state.axis(bit)
    out = state.copy()
    amps = np.moveaxis(state.amps, (ai, ab), (0, 1)).copy()
    flipped = amps[:, ::-1, ...]
    mask = bits.astype(bool)
    amps[mask] = flipped[mask]
    out.amps = np.moveaxis(amps, (0, 1), (ai, ab)).copy()
    return out


def apply_phase_bit_query(state: StateVector, y, varphi: float, index: str, bit: str,
                          n: int | None = None) -> StateVector:
    """R_y(varphi) |j>|b> = e^{i varphi (b xor y_j)} |j>|b>."""
    _, bits = _register_bits(state, index, y, n)
    if state.dim(bit) != 2:
        raise DomainError(f"register {bit!r} must be a qubit")
    ai, ab = state.axis(index), state.axis(bit)
    phase = np.exp(1j * varphi * (bits[:, None] ^ np.array([0, 1])[None, :]))
    amps = np.moveaxis(state.amps, (ai, ab), (0, 1))
    amps = amps * phase.reshape(phase.shape + (1,) * (amps.ndim - 2))
    out = state.copy()
    out.amps = np.moveaxis(amps, (0, 1), (ai, ab)).copy()
    return out


def apply_list_prep(state: StateVector, control: str, index: str, n: int) -> StateVector:
    """U|1>|0> = |1> n^{-1/2} sum_{i<n} |i>; U|0>|0> = |0>|0>.

    Completed to a unitary by acting with the DFT-like map F_n on the index
    register when the control is 1 (F_n |0> = |s>).
    """
    if state.dim(control) != 2:
        raise DomainError(f"register {control!r} must be a qubit")
    dim = state.dim(index)
    F = dft_matrix(n, dim)
    U = np.zeros((2 * dim, 2 * dim), dtype=complex)
    U[:dim, :dim] = np.eye(dim)
    U[dim:, dim:] = F
    return apply_unitary(state, U, [control, index])


def apply_controlled_query(state: StateVector, x, control: str, index: str, n: int | None = None) -> StateVector:
    """|c>|i> -> (-1)^{c x_i} |c>|i>: the list-protocol query."""
    _, bits = _register_bits(state, index, x, n)
    dim = len(bits)
    diag = np.concatenate([np.ones(dim), 1.0 - 2.0 * bits])
    return apply_unitary(state, np.diag(diag), [control, index])


@dataclass(frozen=True)
class Branch:
    outcome: int
    probability: float
    state: StateVector


def measure_branches(state: StateVector, register: str, tol: float = BRANCH_TOL) -> list[Branch]:
    """All outcomes of a computational-basis measurement of ``register``
    with probability > tol, with normalised post-measurement states."""
    ax = state.axis(register)
    probs = np.sum(np.abs(np.moveaxis(state.amps, ax, 0)) ** 2, axis=tuple(range(1, state.amps.ndim)))
    total = float(np.sum(probs))
    if abs(total - 1.0) > BRANCH_TOL:
        raise InvariantError("branch-probabilities", f"sum {total}")
    out = []
    for k, p in enumerate(probs):
        if p <= tol:
            continue
        post = state.copy()
        keep = np.zeros(state.amps.shape[ax], dtype=bool)
        keep[k] = True
        shape = [1] * state.amps.ndim
        shape[ax] = len(keep)
        post.amps = state.amps * keep.reshape(shape) / math.sqrt(p)
        out.append(Branch(k, float(p), post))
    return out


def measure_in_basis(state: StateVector, basis: Sequence[np.ndarray], registers: Sequence[str],
                     tol: float = BRANCH_TOL, ortho_tol: float = 1e-9) -> list[tuple[int, float]]:
    """Projective measurement onto an orthonormal set (completed to a basis).

    The set is checked to be orthonormal first; that is what makes the
    states perfectly distinguishable.  Returns (index, probability) for
    every element with probability > tol; index -1 is the complement.
    """
    B = np.array([np.asarray(b, dtype=complex).reshape(-1) for b in basis])
    gram = B.conj() @ B.T
    defect = float(np.max(np.abs(gram - np.eye(len(B))))) if len(B) else 0.0
    if defect > ortho_tol:
        raise InvariantError("orthonormal-measurement", f"Gram defect {defect:.3e}")
    order = list(registers) + [r for r, _ in state.registers if r not in registers]
    st = state.reorder(order)
    k = int(np.prod([st.dim(r) for r in registers]))
    M = st.amps.reshape(k, -1)
    if B.shape[1] != k:
        raise DomainError(f"basis vectors of dim {B.shape[1]} on registers of dim {k}")
    coeff = B.conj() @ M
    probs = np.sum(np.abs(coeff) ** 2, axis=1)
    rest = max(0.0, 1.0 - float(np.sum(probs)))
    out = [(i, float(p)) for i, p in enumerate(probs) if p > tol]
    if rest > tol:
        out.append((-1, rest))
    return out


@dataclass(frozen=True)
class GroverParams:
    n: int
    d: int
    ell: int
    phi: float
    varphi: float
    residual: float


def grover_iterations(n: int, d: int) -> int:
    """ceil(pi / (4 arcsin sqrt(d/n)) - 1/2), with 0 when every index is marked."""
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n}, d={d}")
    if d == n:
        return 0
    theta = math.asin(math.sqrt(d / n))
    val = math.pi / (4.0 * theta) - 0.5
    r = round(val)
    if abs(val - r) < 1e-9:
        return int(r)
    return math.ceil(val)


def _grover_state(n: int, z: int, ell: int, phi: float, varphi: float) -> StateVector:
    st = StateVector([("i", n)], uniform(n))
    for _ in range(ell - 1):
        st = apply_query(st, z, "i")
        st = apply_diffusion(st, "i")
    st = apply_phase_query(st, z, varphi, "i")
    return apply_param_diffusion(st, phi, "i")


def grover_unmarked_weight(n: int, z: int, ell: int, phi: float, varphi: float) -> float:
    st = _grover_state(n, z, ell, phi, varphi)
    marked = np.array([(z >> i) & 1 for i in range(n)], dtype=bool)
    return float(np.sum(np.abs(st.amps[~marked]) ** 2))


def _final_step_mismatch(theta: float, ell: int, varphi: float) -> float:
    """In the 2-D span of the marked/unmarked uniform states, after ell - 1
    plain iterations the state is a|m> + b|u> with a = sin((2 ell - 1) theta).
    The final G(phi) V_z(varphi) can clear |u> iff
    2 cos(theta) Re(q) = b, q = sin(theta) a e^{i varphi} + cos(theta) b.
    Returns 2 cos(theta) Re(q) - b.
    """
    a = math.sin((2 * ell - 1) * theta)
    b = math.cos((2 * ell - 1) * theta)
    q = math.sin(theta) * a * complex(math.cos(varphi), math.sin(varphi)) + math.cos(theta) * b
    return 2.0 * math.cos(theta) * q.real - b


def exact_grover_params(n: int, d: int, tol: float = 1e-9) -> GroverParams:
    """Iteration count and final-step angles giving success probability 1.

    varphi solves the final-step relation by bracketing root-finding on
    [0, pi]; phi then follows in closed form.  The pair is validated by
    simulating with the marked set {0, .., d-1}.
    """
    ell = grover_iterations(n, d)
    if ell == 0:
        return GroverParams(n, d, 0, 0.0, 0.0, 0.0)
    theta = math.asin(math.sqrt(d / n))
    f0 = _final_step_mismatch(theta, ell, 0.0)
    fpi = _final_step_mismatch(theta, ell, math.pi)
    if abs(f0) < 1e-14:
        varphi = 0.0
    elif abs(fpi) < 1e-14:
        varphi = math.pi
    elif f0 * fpi < 0:
        varphi = brentq(lambda v: _final_step_mismatch(theta, ell, v), 0.0, math.pi, xtol=1e-15, rtol=1e-15)
    else:
        raise InvariantError("grover-angle-bracket", f"no sign change for n={n}, d={d}: {f0}, {fpi}")
    a = math.sin((2 * ell - 1) * theta)
    b = math.cos((2 * ell - 1) * theta)
    q = math.sin(theta) * a * complex(math.cos(varphi), math.sin(varphi)) + math.cos(theta) * b
    # G(phi) = I + (e^{i phi} - 1)|s><s|; clearing |u> needs
    # b + (e^{i phi} - 1) cos(theta) q = 0
    if abs(q) < 1e-15:
        raise InvariantError("grover-angle-degenerate", f"n={n}, d={d}")
    w = -b / (math.cos(theta) * q)
    phi = float(np.angle(1.0 + w))
    z = (1 << d) - 1
    residual = grover_unmarked_weight(n, z, ell, phi, varphi)
    if residual > tol:
        raise InvariantError("grover-exact", f"unmarked weight {residual:.3e} for n={n}, d={d}")
    return GroverParams(n, d, ell, phi, float(varphi), residual)


def run_exact_grover(n: int, z: int, params: GroverParams) -> StateVector:
    """Full exact search on U_z; |z| must equal params.d."""
    if params.ell == 0:
        return StateVector([("i", n)], uniform(n))
    return _grover_state(n, z, params.ell, params.phi, params.varphi)
