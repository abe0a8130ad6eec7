"""Shared fixtures: reference codes, synthesized circuits, and small oracles.

Expensive artifacts (synthesis runs, decoder derivations, trellis tables)
are session-scoped; everything downstream treats them as read-only.
"""

from __future__ import annotations

import random

import pytest

from qconvenc import (
    CliffordCircuit,
    CliffordGate,
    MemoryAssignment,
    PauliOperator,
    SymplecticMap,
    Simulator,
    circuit_to_symplectic,
    derive_online_decoder,
    parse_code,
    synthesize_encoder,
)
from qconvenc.library import (
    FGG_CODE,
    FGG_ENCODER,
    GR_CODE,
    GR_COMPLETION_ROWS,
    GR_MEMORY_CHOICE,
)

P = PauliOperator.from_string


@pytest.fixture(scope="session")
def fgg_code():
    return FGG_CODE


@pytest.fixture(scope="session")
def gr_code():
    return GR_CODE


@pytest.fixture(scope="session")
def fgg_reference_encoder():
    """The known-good 14-gate single-memory-qubit encoder."""
    return FGG_ENCODER


@pytest.fixture(scope="session")
def fgg_synthesis():
    return synthesize_encoder(FGG_CODE)


@pytest.fixture(scope="session")
def gr_synthesis():
    return synthesize_encoder(
        GR_CODE,
        assignment=MemoryAssignment(6, GR_MEMORY_CHOICE),
        completion_rows=GR_COMPLETION_ROWS,
    )


@pytest.fixture(scope="session")
def fgg_decoder(fgg_reference_encoder):
    return derive_online_decoder(FGG_CODE, fgg_reference_encoder)


@pytest.fixture(scope="session")
def fgg_simulator(fgg_reference_encoder):
    return Simulator(FGG_CODE, fgg_reference_encoder)


# A row-consistent encoder for the two-frame code below whose zero-weight
# diagram has a logical self-loop at memory state Z: reading frames off the
# wire never reveals the info stream entering through that loop.
CATASTROPHIC_CODE_TEXT = "n=2\nZZ|IZ\n"

_CATASTROPHIC_ROWS = ["ZXX", "XZI", "IZZ", "IZI", "ZZZ", "XZX"]


@pytest.fixture(scope="session")
def catastrophic_code():
    return parse_code(CATASTROPHIC_CODE_TEXT)


@pytest.fixture(scope="session")
def catastrophic_encoder_map():
    return SymplecticMap(3, tuple(P(s).vec() for s in _CATASTROPHIC_ROWS))


GATE_KINDS = ("H", "P", "CNOT", "CZ", "SWAP")


def random_circuit(width: int, ngates: int, rng: random.Random) -> CliffordCircuit:
    """Uniform random gate sequence; the standard way tests fabricate an
    arbitrary symplectic map with a trusted circuit realization."""
    gates = []
    for _ in range(ngates):
        kind = rng.choice(GATE_KINDS if width > 1 else GATE_KINDS[:2])
        if kind in ("H", "P"):
            gates.append(CliffordGate(kind, (rng.randrange(1, width + 1),)))
        else:
            a, b = rng.sample(range(1, width + 1), 2)
            gates.append(CliffordGate(kind, (a, b)))
    return CliffordCircuit(width, tuple(gates))


def random_symplectic(width: int, rng: random.Random) -> SymplecticMap:
    return circuit_to_symplectic(random_circuit(width, 8 * width, rng))
