import numpy as np
import pytest

from qcapprox import (
    Circuit,
    ControlledGate,
    Distribution,
    DomainError,
    LocalGate,
    PhaseOnZero,
    StateVec,
    apply_circuit,
    circuit_dagger,
    circuit_to_matrix,
    default_gate_cost,
    embed_gate,
    measure_prefix,
)
from helpers import haar_unitary, random_circuit, random_state

X = np.array([[0, 1], [1, 0]], dtype=complex)


def embed_oracle(positions, matrix, n):
    """Brute-force bit reindexing: U[b', b] = M[loc(b'), loc(b)] where the
    local index collects the bits at `positions` and all other bits agree."""
    dim = 1 << n
    g = len(positions)
    u = np.zeros((dim, dim), dtype=complex)
    rest = [q for q in range(n) if q not in positions]
    for b in range(dim):
        loc_in = sum(((b >> q) & 1) << j for j, q in enumerate(positions))
        for loc_out in range(1 << g):
            bp = b
            for j, q in enumerate(positions):
                bp &= ~(1 << q)
                bp |= ((loc_out >> j) & 1) << q
            u[bp, b] += matrix[loc_out, loc_in]
    assert all(((b >> q) & 1) == ((b >> q) & 1) for q in rest for b in range(dim))
    return u


def test_state_validation():
    with pytest.raises(DomainError):
        StateVec(2, np.array([1.0, 0.0, 0.0]))
    with pytest.raises(DomainError):
        StateVec(1, np.array([1.0, 1.0]))
    s = StateVec.zero(3)
    assert s.amps[0] == 1.0 and abs(s.amps[1:]).max() == 0.0


def test_state_amps_frozen():
    s = StateVec.zero(2)
    with pytest.raises(ValueError):
        s.amps[0] = 0.5


def test_gate_validation():
    with pytest.raises(DomainError):
        LocalGate((0, 0), haar_unitary(4, np.random.default_rng(0)))
    with pytest.raises(DomainError):
        LocalGate((0,), np.array([[1, 1], [0, 1]], dtype=complex))  # not unitary
    with pytest.raises(DomainError):
        ControlledGate(((0, 2),), 1, X)  # bad polarity
    with pytest.raises(DomainError):
        ControlledGate(((1, 0),), 1, X)  # control hits target
    with pytest.raises(DomainError):
        Circuit(2, (LocalGate((5,), X),))  # out of range


def test_embed_x_on_qubit_one():
    # X on qubit 1 flips bit 1: |00> (index 0) goes to index 2
    u = embed_gate(LocalGate((1,), X), 2)
    out = u @ StateVec.zero(2).amps
    assert np.allclose(out, np.eye(4)[:, 2])


def test_embed_matches_bit_reindex_oracle():
    rng = np.random.default_rng(42)
    m = haar_unitary(4, rng)
    got = embed_gate(LocalGate((0, 2), m), 3)
    want = embed_oracle((0, 2), m, 3)
    assert np.allclose(got, want, atol=1e-12)
    # a few more random position sets
    for _ in range(20):
        n = int(rng.integers(2, 5))
        g = int(rng.integers(1, min(n, 3) + 1))
        positions = tuple(int(q) for q in rng.choice(n, size=g, replace=False))
        m = haar_unitary(1 << g, rng)
        assert np.allclose(
            embed_gate(LocalGate(positions, m), n),
            embed_oracle(positions, m, n),
            atol=1e-12,
        )


def test_embed_unitary_for_all_variants():
    rng = np.random.default_rng(3)
    for _ in range(30):
        n = int(rng.integers(2, 5))
        c = random_circuit(n, 1, rng)
        u = embed_gate(c.gates[0], n)
        assert np.allclose(u.conj().T @ u, np.eye(1 << n), atol=1e-10)


def test_phase_on_zero():
    c = Circuit(1, (PhaseOnZero(np.pi),))
    out = apply_circuit(c, StateVec.zero(1))
    assert np.allclose(out.amps, [-1.0, 0.0])


def test_controlled_gate_polarity():
    # fire X on qubit 1 only when qubit 0 is 0
    g = ControlledGate(((0, 0),), 1, X)
    out = apply_circuit(Circuit(2, (g,)), StateVec.zero(2))
    assert np.allclose(out.amps, np.eye(4)[:, 2])
    out2 = apply_circuit(Circuit(2, (g,)), StateVec.basis(2, 1))
    assert np.allclose(out2.amps, np.eye(4)[:, 1])  # control bit is 1, no fire


def test_apply_matches_dense_oracle():
    rng = np.random.default_rng(11)
    c = random_circuit(3, 3, rng)
    s = random_state(3, rng)
    dense = np.eye(8, dtype=complex)
    for gate in c.gates:
        dense = embed_gate(gate, 3) @ dense
    assert np.allclose(apply_circuit(c, s).amps, dense @ s.amps, atol=1e-12)


def test_apply_vs_matrix_random_pairs():
    rng = np.random.default_rng(100)
    for _ in range(100):
        n = int(rng.integers(1, 5))
        c = random_circuit(n, int(rng.integers(0, 6)), rng)
        s = random_state(n, rng)
        direct = apply_circuit(c, s).amps
        via_matrix = circuit_to_matrix(c) @ s.amps
        assert np.linalg.norm(direct - via_matrix) <= 1e-9


def test_apply_preserves_norm():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 6))
        out = apply_circuit(random_circuit(n, 4, rng), random_state(n, rng))
        assert abs(np.linalg.norm(out.amps) - 1.0) < 1e-12


def test_circuit_to_matrix_trivials():
    assert np.allclose(circuit_to_matrix(Circuit(1, ())), np.eye(2))
    assert np.allclose(circuit_to_matrix(Circuit(1, (LocalGate((0,), X),))), X)


def test_circuit_to_matrix_columns_match_apply():
    rng = np.random.default_rng(8)
    c = random_circuit(2, 4, rng)
    u = circuit_to_matrix(c)
    for b in range(4):
        col = apply_circuit(c, StateVec.basis(2, b)).amps
        assert np.allclose(u[:, b], col, atol=1e-12)


def test_gate_order_is_left_to_right():
    # X then Z on one qubit: amplitudes pick up the phase after the flip
    Z = np.diag([1.0, -1.0]).astype(complex)
    c = Circuit(1, (LocalGate((0,), X), LocalGate((0,), Z)))
    assert np.allclose(circuit_to_matrix(c), Z @ X)


def test_dagger_round_trip():
    rng = np.random.default_rng(21)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        c = random_circuit(n, 5, rng)
        s = random_state(n, rng)
        back = apply_circuit(circuit_dagger(c), apply_circuit(c, s))
        assert np.linalg.norm(back.amps - s.amps) <= 1e-9


def test_dagger_phase_gate():
    d = circuit_dagger(Circuit(1, (PhaseOnZero(0.7),)))
    assert isinstance(d.gates[0], PhaseOnZero) and d.gates[0].w == -0.7


def test_measure_prefix_point_mass():
    for n in (1, 3):
        for l in range(1, n + 1):
            dist = measure_prefix(StateVec.zero(n), l)
            assert dist.probs[0] == 1.0 and dist.probs[1:].sum() == 0.0


def test_measure_prefix_exhaustive_oracle():
    rng = np.random.default_rng(17)
    s = random_state(4, rng)
    dist = measure_prefix(s, 2)
    for pattern in range(4):
        total = sum(
            abs(s.amps[b]) ** 2 for b in range(16) if b % 4 == pattern
        )
        assert abs(dist.probs[pattern] - total) < 1e-12


def test_measure_prefix_coarsening():
    # l-bit distribution is the (l+1)-bit one summed over its top bit
    rng = np.random.default_rng(19)
    s = random_state(4, rng)
    for l in range(1, 4):
        fine = measure_prefix(s, l + 1).probs
        coarse = measure_prefix(s, l).probs
        assert np.allclose(coarse, fine[: 1 << l] + fine[1 << l:], atol=1e-12)


def test_distribution_validation():
    with pytest.raises(DomainError):
        Distribution(1, np.array([0.5, 0.4]))
    with pytest.raises(DomainError):
        Distribution(1, np.array([1.1, -0.1]))
    d = Distribution(1, np.array([1.0 + 5e-13, -5e-13]))  # tiny negatives clamp
    assert d.probs[1] == 0.0


def test_default_cost_model():
    n = 5
    assert default_gate_cost(LocalGate((0, 1), haar_unitary(4, np.random.default_rng(0))), n) == 1
    assert default_gate_cost(LocalGate((0, 1, 2), haar_unitary(8, np.random.default_rng(0))), n) == 8
    assert default_gate_cost(ControlledGate(((0, 1), (1, 0), (2, 1)), 3, X), n) == 3
    assert default_gate_cost(ControlledGate(((0, 1),), 1, X), n) == 1
    assert default_gate_cost(PhaseOnZero(0.5), n) == 25
    c = Circuit(2, (LocalGate((0,), X), PhaseOnZero(1.0)))
    cost = c.cost()
    assert cost.primitive_count == 2
    assert cost.two_qubit_equiv == 1 + 4
