"""Encoder synthesis and simulation for quantum convolutional codes."""

from .pauli import PauliOperator, multiply, symplectic_product, tensor, weight
from .circuit import (
    CliffordCircuit,
    CliffordGate,
    SymplecticMap,
    apply_circuit,
    apply_gate,
    circuit_from_json,
    circuit_to_json,
    circuit_to_symplectic,
    circuit_to_text,
    parse_circuit,
    wire_roles,
)
from .code import ConvolutionalCode, FramedPauliSequence, parse_code, render_code, validate
from .skeleton import (
    MemoryAssignment,
    TransformationSkeleton,
    assign_memory,
    build_skeleton,
    minimal_memory,
    skeleton_commutation_matrix,
    symplectic_gram_schmidt,
)
from .synthesis import PartialMap, complete_and_synthesize, synthesize_circuit
from .catastrophic import (
    CatastrophicityVerdict,
    ZeroWeightGraph,
    is_noncatastrophic,
    is_noncatastrophic_decoder,
    zero_weight_graph,
)
from .pipeline import EncoderSynthesis, synthesize_encoder, verify_encoder
from .decoder import (
    DecoderResult,
    derive_online_decoder,
    encoded_logical_operators,
    windowed_roundtrip_failures,
)
from .simulate import (
    DepolarizingChannel,
    SimulationResult,
    Simulator,
    TurboChain,
    build_serial_turbo,
    estimate_wer,
    extract_syndrome,
    sample_error,
    viterbi_decode,
)

__all__ = [
    "PauliOperator",
    "symplectic_product",
    "tensor",
    "weight",
    "multiply",
    "CliffordGate",
    "CliffordCircuit",
    "SymplecticMap",
    "apply_circuit",
    "apply_gate",
    "circuit_from_json",
    "circuit_to_json",
    "circuit_to_symplectic",
    "circuit_to_text",
    "parse_circuit",
    "wire_roles",
    "ConvolutionalCode",
    "FramedPauliSequence",
    "parse_code",
    "render_code",
    "validate",
    "TransformationSkeleton",
    "MemoryAssignment",
    "build_skeleton",
    "skeleton_commutation_matrix",
    "symplectic_gram_schmidt",
    "minimal_memory",
    "assign_memory",
    "PartialMap",
    "synthesize_circuit",
    "complete_and_synthesize",
    "ZeroWeightGraph",
    "CatastrophicityVerdict",
    "zero_weight_graph",
    "is_noncatastrophic",
    "is_noncatastrophic_decoder",
    "EncoderSynthesis",
    "synthesize_encoder",
    "verify_encoder",
    "DecoderResult",
    "encoded_logical_operators",
    "derive_online_decoder",
    "windowed_roundtrip_failures",
    "DepolarizingChannel",
    "sample_error",
    "extract_syndrome",
    "Simulator",
    "viterbi_decode",
    "SimulationResult",
    "estimate_wer",
    "TurboChain",
    "build_serial_turbo",
]
