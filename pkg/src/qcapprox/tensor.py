"""Qubit state vectors, gates, circuits and measurement statistics.

Bit convention used throughout: qubit i is tensor factor i and bit i of a
basis index b, extracted as (b >> i) & 1. The low-order bit is the "first"
bit, so the first l bits of b are b % 2**l.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

NORM_TOL = 1e-9
UNITARY_TOL = 1e-9

# Full matrices above this register size are refused by default.
DENSE_QUBIT_CAP = 10
# State-only simulation cap (2**24 amplitudes = 256 MiB of complex128).
SIM_QUBIT_CAP = 24


class DomainError(ValueError):
    """A precondition on operation inputs was violated."""


def _as_complex_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=complex)
    if arr.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


def _check_unitary(matrix: np.ndarray, name: str, tol: float = UNITARY_TOL) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"{name} must be square, got shape {m.shape}")
    d = m.shape[0]
    if d == 0 or d & (d - 1):
        raise DomainError(f"{name} must have power-of-two dimension, got {d}")
    err = np.linalg.norm(m.conj().T @ m - np.eye(d))
    if err > tol:
        raise DomainError(f"{name} is not unitary (Frobenius defect {err:.3e} > {tol:.0e})")
    return m


@dataclass(frozen=True)
class StateVec:
    """Normalized state of n qubits: 2**n complex amplitudes."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"need n >= 1 qubits, got {self.n}")
        amps = _as_complex_array(self.amps, "amps").copy()
        if amps.shape[0] != 1 << self.n:
            raise DomainError(f"expected {1 << self.n} amplitudes, got {amps.shape[0]}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state norm {norm!r} deviates from 1 beyond {NORM_TOL:.0e}")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @staticmethod
    def zero(n: int) -> "StateVec":
        """The all-zeros basis state |0...0>."""
        amps = np.zeros(1 << n, dtype=complex)
        amps[0] = 1.0
        return StateVec(n, amps)

    @staticmethod
    def basis(n: int, b: int) -> "StateVec":
        if not 0 <= b < 1 << n:
            raise DomainError(f"basis index {b} out of range for n={n}")
        amps = np.zeros(1 << n, dtype=complex)
        amps[b] = 1.0
        return StateVec(n, amps)


@dataclass(frozen=True)
class Distribution:
    """Probabilities of the 2**l outcomes of measuring the first l bits."""

    l: int
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).copy()
        if p.shape != (1 << self.l,):
            raise DomainError(f"expected {1 << self.l} probabilities, got shape {p.shape}")
        if p.min() < -1e-12:
            raise DomainError(f"negative probability {p.min()!r}")
        np.clip(p, 0.0, None, out=p)
        total = p.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise DomainError(f"probabilities sum to {total!r}, not 1")
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)


@dataclass(frozen=True)
class LocalGate:
    """Unitary on an explicit tuple of qubit positions.

    positions[j] is local tensor factor j, i.e. bit j of the row/column
    index of `matrix`.
    """

    positions: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        pos = tuple(int(q) for q in self.positions)
        if len(pos) == 0:
            raise DomainError("local gate needs at least one position")
        if len(set(pos)) != len(pos):
            raise DomainError(f"duplicate qubit positions {pos}")
        if min(pos) < 0:
            raise DomainError(f"negative qubit position in {pos}")
        m = _check_unitary(self.matrix, "gate matrix")
        if m.shape[0] != 1 << len(pos):
            raise DomainError(
                f"matrix dimension {m.shape[0]} does not match {len(pos)} positions"
            )
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "matrix", m)

    @property
    def arity(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class ControlledGate:
    """Single-qubit unitary applied to `target` when every control matches.

    controls is a tuple of (qubit, polarity) pairs; polarity 1 fires on the
    control bit being 1, polarity 0 on it being 0.
    """

    controls: tuple[tuple[int, int], ...]
    target: int
    matrix: np.ndarray

    def __post_init__(self):
        ctrls = tuple((int(q), int(p)) for q, p in self.controls)
        qubits = [q for q, _ in ctrls]
        if any(p not in (0, 1) for _, p in ctrls):
            raise DomainError(f"control polarities must be 0 or 1: {ctrls}")
        touched = qubits + [int(self.target)]
        if len(set(touched)) != len(touched):
            raise DomainError(f"controls {qubits} and target {self.target} must be distinct")
        if min(touched) < 0:
            raise DomainError("negative qubit index")
        m = _check_unitary(self.matrix, "gate matrix")
        if m.shape != (2, 2):
            raise DomainError(f"controlled gate matrix must be 2x2, got {m.shape}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "controls", ctrls)
        object.__setattr__(self, "target", int(self.target))
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class PhaseOnZero:
    """Multiply the amplitude of |0...0> by exp(i*w); identity elsewhere."""

    w: float

    def __post_init__(self):
        object.__setattr__(self, "w", float(self.w))


Gate = Union[LocalGate, ControlledGate, PhaseOnZero]


def gate_qubits(gate: Gate) -> tuple[int, ...]:
    """All qubit indices a gate touches (empty for PhaseOnZero)."""
    if isinstance(gate, LocalGate):
        return gate.positions
    if isinstance(gate, ControlledGate):
        return tuple(q for q, _ in gate.controls) + (gate.target,)
    if isinstance(gate, PhaseOnZero):
        return ()
    raise DomainError(f"unknown gate type {type(gate).__name__}")


def default_gate_cost(gate: Gate, n: int) -> float:
    """Two-qubit-equivalent cost of one primitive gate on an n-qubit register."""
    if isinstance(gate, LocalGate):
        g = gate.arity
        return 1.0 if g <= 2 else float(1 << g)
    if isinstance(gate, ControlledGate):
        return float(max(1, len(gate.controls)))
    if isinstance(gate, PhaseOnZero):
        return float(n * n)
    raise DomainError(f"unknown gate type {type(gate).__name__}")


CostModel = Callable[[Gate, int], float]


@dataclass(frozen=True)
class CircuitCost:
    primitive_count: int
    two_qubit_equiv: float


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on an n-qubit register, applied left to right."""

    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"need n >= 1 qubits, got {self.n}")
        gates = tuple(self.gates)
        for g in gates:
            bad = [q for q in gate_qubits(g) if not 0 <= q < self.n]
            if bad:
                raise DomainError(f"gate {type(g).__name__} touches qubit(s) {bad} outside [0, {self.n})")
        object.__setattr__(self, "gates", gates)

    def cost(self, model: CostModel = default_gate_cost) -> CircuitCost:
        return CircuitCost(
            primitive_count=len(self.gates),
            two_qubit_equiv=float(sum(model(g, self.n) for g in self.gates)),
        )


def embed_gate(gate: Gate, n: int, dense_cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Full 2**n x 2**n unitary of a single gate on an n-qubit register."""
    if n > dense_cap:
        raise DomainError(f"dense matrix for n={n} exceeds cap {dense_cap}")
    dim = 1 << n
    bad = [q for q in gate_qubits(gate) if not 0 <= q < n]
    if bad:
        raise DomainError(f"gate touches qubit(s) {bad} outside [0, {n})")

    if isinstance(gate, PhaseOnZero):
        u = np.eye(dim, dtype=complex)
        u[0, 0] = np.exp(1j * gate.w)
        return u

    if isinstance(gate, ControlledGate):
        u = np.eye(dim, dtype=complex)
        idx = np.arange(dim)
        fire = np.ones(dim, dtype=bool)
        for q, pol in gate.controls:
            fire &= ((idx >> q) & 1) == pol
        i0 = idx[fire & (((idx >> gate.target) & 1) == 0)]
        i1 = i0 | (1 << gate.target)
        m = gate.matrix
        u[i0, i0] = m[0, 0]
        u[i0, i1] = m[0, 1]
        u[i1, i0] = m[1, 0]
        u[i1, i1] = m[1, 1]
        return u

    # Local gate: conjugate a kron-with-identity block by the permutation
    # that packs the gate positions into the low-order bits.
    g = gate.arity
    rest = [q for q in range(n) if q not in gate.positions]
    idx = np.arange(dim)
    packed = np.zeros(dim, dtype=np.int64)
    for j, q in enumerate(gate.positions):
        packed |= ((idx >> q) & 1) << j
    for j, q in enumerate(rest):
        packed |= ((idx >> q) & 1) << (g + j)
    k = np.kron(np.eye(1 << (n - g), dtype=complex), gate.matrix)
    return np.ascontiguousarray(k[np.ix_(packed, packed)])


def _apply_local(amps: np.ndarray, n: int, gate: LocalGate) -> np.ndarray:
    g = gate.arity
    # Axis k of the reshaped tensor is bit n-1-k of the index.
    axes = [n - 1 - q for q in gate.positions]
    mr = gate.matrix.reshape([2] * (2 * g))
    # Input axes of mr run over local bits g-1..0; line the state axes up.
    state_axes = [axes[g - 1 - i] for i in range(g)]
    t = np.tensordot(mr, amps.reshape([2] * n), axes=(list(range(g, 2 * g)), state_axes))
    t = np.moveaxis(t, list(range(g)), state_axes)
    return t.reshape(-1)


def _apply_controlled(amps: np.ndarray, n: int, gate: ControlledGate) -> np.ndarray:
    idx = np.arange(1 << n)
    fire = np.ones(idx.shape, dtype=bool)
    for q, pol in gate.controls:
        fire &= ((idx >> q) & 1) == pol
    i0 = idx[fire & (((idx >> gate.target) & 1) == 0)]
    i1 = i0 | (1 << gate.target)
    out = amps.copy()
    a0 = amps[i0]
    a1 = amps[i1]
    m = gate.matrix
    out[i0] = m[0, 0] * a0 + m[0, 1] * a1
    out[i1] = m[1, 0] * a0 + m[1, 1] * a1
    return out


def apply_circuit(circuit: Circuit, state: StateVec) -> StateVec:
    """Run the circuit on a state.

    Local gates contract against the state tensor; controlled and
    phase-on-zero gates update amplitudes by index arithmetic. No full
    2**n x 2**n matrix is ever formed.
    """
    if circuit.n != state.n:
        raise DomainError(f"circuit on {circuit.n} qubits, state on {state.n}")
    if circuit.n > SIM_QUBIT_CAP:
        raise DomainError(f"simulation capped at {SIM_QUBIT_CAP} qubits, got {circuit.n}")
    amps = state.amps.copy()
    for gate in circuit.gates:
        if isinstance(gate, LocalGate):
            amps = _apply_local(amps, circuit.n, gate)
        elif isinstance(gate, ControlledGate):
            amps = _apply_controlled(amps, circuit.n, gate)
        else:
            amps = amps.copy()
            amps[0] *= np.exp(1j * gate.w)
    return StateVec(circuit.n, amps)


def circuit_to_matrix(circuit: Circuit, dense_cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Ordered product of the embedded gate matrices (last gate leftmost)."""
    if circuit.n > dense_cap:
        raise DomainError(f"dense matrix for n={circuit.n} exceeds cap {dense_cap}")
    u = np.eye(1 << circuit.n, dtype=complex)
    for gate in circuit.gates:
        u = embed_gate(gate, circuit.n, dense_cap) @ u
    return u


def _dagger_gate(gate: Gate) -> Gate:
    if isinstance(gate, LocalGate):
        return LocalGate(gate.positions, gate.matrix.conj().T)
    if isinstance(gate, ControlledGate):
        return ControlledGate(gate.controls, gate.target, gate.matrix.conj().T)
    return PhaseOnZero(-gate.w)


def circuit_dagger(circuit: Circuit) -> Circuit:
    """Inverse circuit: reversed gate order, each gate conjugate-transposed."""
    return Circuit(circuit.n, tuple(_dagger_gate(g) for g in reversed(circuit.gates)))


def measure_prefix(state: StateVec, l: int) -> Distribution:
    """Distribution of the first l bits (the low-order l bits of the index)."""
    if not 1 <= l <= state.n:
        raise DomainError(f"prefix length {l} out of range [1, {state.n}]")
    p = np.abs(state.amps) ** 2
    probs = p.reshape(1 << (state.n - l), 1 << l).sum(axis=0)
    return Distribution(l, probs)
