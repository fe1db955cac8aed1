"""Quantum circuit synthesis, approximation metrics, unitary delta-nets
and counting bounds."""

__version__ = "0.1.0"

from .tensor import (
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
from .synthesis import (
    OrthoSeq,
    SynthesisReport,
    extend_to_unitary,
    gate_budget,
    prepare_state,
    synthesize_transitive,
)
from .measure import (
    McEstimate,
    RngStream,
    ball_volume_bound,
    mc_simplex_ball,
    mc_sphere_cap,
    sample_haar_state,
    sample_ortho_seq,
    sample_simplex,
    simplex_ball_bound,
    sphere_cap_bound,
)
from .nets import NetSpec, circuit_structure_count, net_cardinality, net_point, nearest_net_index

__all__ = [
    "Circuit",
    "ControlledGate",
    "Distribution",
    "DomainError",
    "LocalGate",
    "McEstimate",
    "NetSpec",
    "OrthoSeq",
    "PhaseOnZero",
    "RngStream",
    "StateVec",
    "SynthesisReport",
    "apply_circuit",
    "ball_volume_bound",
    "circuit_dagger",
    "circuit_structure_count",
    "circuit_to_matrix",
    "default_gate_cost",
    "embed_gate",
    "extend_to_unitary",
    "gate_budget",
    "mc_simplex_ball",
    "mc_sphere_cap",
    "measure_prefix",
    "nearest_net_index",
    "net_cardinality",
    "net_point",
    "prepare_state",
    "sample_haar_state",
    "sample_ortho_seq",
    "sample_simplex",
    "simplex_ball_bound",
    "sphere_cap_bound",
    "synthesize_transitive",
]
