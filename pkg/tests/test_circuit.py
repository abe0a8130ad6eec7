"""Clifford gates, circuit/text/JSON round trips, symplectic matrices.

Gate conjugation is checked against an independent single/two-qubit truth
table; everything else layers on that.
"""

import json
import random

import pytest

from qconvenc import (
    CliffordCircuit,
    CliffordGate,
    PauliOperator,
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
from qconvenc.errors import ParseError
from qconvenc.library import FGG_ENCODER, FGG_ENCODER_TEXT, fgg_transformation_rows

from conftest import random_circuit

P = PauliOperator.from_string

# independent conjugation tables, phases dropped
H_TABLE = {"I": "I", "X": "Z", "Z": "X", "Y": "Y"}
P_TABLE = {"I": "I", "X": "Y", "Z": "Z", "Y": "X"}
CNOT_TABLE = {  # (control, target) -> (control, target)
    "II": "II", "IX": "IX", "IZ": "ZZ", "IY": "ZY",
    "XI": "XX", "XX": "XI", "XZ": "YY", "XY": "YZ",
    "ZI": "ZI", "ZX": "ZX", "ZZ": "IZ", "ZY": "IY",
    "YI": "YX", "YX": "YI", "YZ": "XY", "YY": "XZ",
}


def czc(a: str, b: str) -> str:
    # CZ = H on target, CNOT, H on target
    a2, b2 = CNOT_TABLE[a + H_TABLE[b]]
    return a2 + H_TABLE[b2]


def test_single_qubit_gate_tables():
    for letter in "IXYZ":
        assert apply_gate(CliffordGate("H", (1,)), P(letter)) == P(H_TABLE[letter])
        assert apply_gate(CliffordGate("P", (1,)), P(letter)) == P(P_TABLE[letter])


def test_two_qubit_gate_tables():
    for a in "IXYZ":
        for b in "IXYZ":
            pair = P(a + b)
            assert apply_gate(CliffordGate("CNOT", (1, 2)), pair) == P(CNOT_TABLE[a + b])
            assert apply_gate(CliffordGate("CZ", (1, 2)), pair) == P(czc(a, b))
            assert apply_gate(CliffordGate("SWAP", (1, 2)), pair) == P(b + a)


def test_gates_act_on_named_wires_only():
    # control 3 carries X -> X spreads to target 1; wire 5 untouched
    assert apply_gate(CliffordGate("CNOT", (3, 1)), P("IIXIY")) == P("XIXIY")
    assert apply_gate(CliffordGate("H", (2,)), P("IXIII")) == P("IZIII")


def test_double_hadamard_is_identity():
    c = CliffordCircuit(1, (CliffordGate("H", (1,)), CliffordGate("H", (1,))))
    m = circuit_to_symplectic(c)
    assert m == SymplecticMap.identity(1)


def test_apply_circuit_matches_matrix_route():
    rng = random.Random(20)
    for _ in range(30):
        w = rng.randrange(1, 6)
        circ = random_circuit(w, 20, rng)
        m = circuit_to_symplectic(circ)
        p = PauliOperator(w, rng.getrandbits(w), rng.getrandbits(w))
        assert apply_circuit(circ, p) == m.apply(p)
        assert m.is_symplectic()


def test_compose_is_sequential_application():
    rng = random.Random(21)
    c1 = random_circuit(3, 15, rng)
    c2 = random_circuit(3, 15, rng)
    m = circuit_to_symplectic(c1).compose(circuit_to_symplectic(c2))
    p = P("XZY")
    assert m.apply(p) == apply_circuit(c2, apply_circuit(c1, p))


def test_reference_encoder_first_row():
    # feeding Z on the first ancilla wire emits the first-frame output XXX
    # and stores X in the memory wire
    out = apply_circuit(FGG_ENCODER, P("IZII"))
    assert out == P("XXXX")


def test_reference_encoder_memory_row():
    # an X already in memory flushes as the second frame XZY
    out = apply_circuit(FGG_ENCODER, P("XIII"))
    assert out == P("XZYI")


def test_reference_encoder_all_rows():
    for src, dst in fgg_transformation_rows():
        assert apply_circuit(FGG_ENCODER, src) == dst


def test_inverse_recovers_encoder_input():
    inv = circuit_to_symplectic(FGG_ENCODER).inverse()
    assert inv.apply(P("XXXX")) == P("IZII")


def test_inverse_round_trip_random():
    rng = random.Random(22)
    for _ in range(20):
        m = circuit_to_symplectic(random_circuit(3, 24, rng))
        assert m.compose(m.inverse()) == SymplecticMap.identity(3)
        assert m.inverse().compose(m) == SymplecticMap.identity(3)


def test_parse_render_round_trip():
    c = parse_circuit(FGG_ENCODER_TEXT)
    assert parse_circuit(circuit_to_text(c)) == c
    assert c.width == 4 and len(c) == 14


def test_parse_rejects_malformed():
    with pytest.raises(ParseError):
        parse_circuit("H 1 2\n")
    with pytest.raises(ParseError):
        parse_circuit("CNOT 1 1\n")
    with pytest.raises(ParseError):
        parse_circuit("FLIP 1\n")
    with pytest.raises(ParseError):
        parse_circuit("H 5\n", width=2)


def test_json_round_trip_with_roles():
    roles_in = wire_roles(3, 1, 1, "encoder")[0]
    doc = circuit_to_json(FGG_ENCODER, input_roles=roles_in)
    parsed = json.loads(doc)
    assert parsed["width"] == 4
    assert parsed["input_roles"] == ["mem", "anc", "anc", "info"]
    assert circuit_from_json(doc) == FGG_ENCODER


def test_wire_roles_both_directions():
    ins, outs = wire_roles(3, 1, 1, "encoder")
    assert ins == ["mem", "anc", "anc", "info"]
    assert outs == ["phys", "phys", "phys", "mem"]
    ins, outs = wire_roles(3, 1, 2, "decoder")
    assert ins == ["mem", "mem", "phys", "phys", "phys"]
    assert outs == ["anc", "anc", "info", "mem", "mem"]
