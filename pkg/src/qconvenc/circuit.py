"""Clifford gates, circuits and their symplectic matrices.

Gates act on Paulis by conjugation, phase-free.  Gate text uses 1-based
qubit positions ("H 2", "CNOT 4 1"); for CNOT the first position is the
control.  A circuit's symplectic matrix is over row vectors: applying the
circuit to P maps its packed vector v to v . M, so composing circuit c1
followed by c2 multiplies M(c1) . M(c2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import ParseError
from .gf2 import invert as gf2_invert
from .gf2 import matmul
from .pauli import PauliOperator

__all__ = [
    "CliffordGate",
    "CliffordCircuit",
    "SymplecticMap",
    "apply_gate",
    "apply_circuit",
    "circuit_to_symplectic",
    "parse_circuit",
    "circuit_to_text",
    "circuit_to_json",
    "circuit_from_json",
]

_ARITY = {"H": 1, "P": 1, "CNOT": 2, "CZ": 2, "SWAP": 2}


@dataclass(frozen=True)
class CliffordGate:
    kind: str
    qubits: Tuple[int, ...]  # 1-based

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ParseError(f"unknown gate {self.kind!r}")
        if len(self.qubits) != _ARITY[self.kind]:
            raise ParseError(f"{self.kind} takes {_ARITY[self.kind]} qubit(s)")
        if any(q < 1 for q in self.qubits):
            raise ParseError("qubit positions are 1-based")
        if len(set(self.qubits)) != len(self.qubits):
            raise ParseError("gate qubits must be distinct")

    def __str__(self) -> str:
        return " ".join([self.kind] + [str(q) for q in self.qubits])


@dataclass(frozen=True)
class CliffordCircuit:
    width: int
    gates: Tuple[CliffordGate, ...]

    def __post_init__(self):
        for g in self.gates:
            if max(g.qubits) > self.width:
                raise ParseError(f"gate {g} exceeds circuit width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)


def apply_gate(gate: CliffordGate, p: PauliOperator) -> PauliOperator:
    x, z = p.x, p.z
    if gate.kind == "H":
        i = gate.qubits[0] - 1
        bi = 1 << i
        xb, zb = x & bi, z & bi
        x = (x & ~bi) | (bi if zb else 0)
        z = (z & ~bi) | (bi if xb else 0)
    elif gate.kind == "P":
        i = gate.qubits[0] - 1
        z ^= x & (1 << i)
    elif gate.kind == "CNOT":
        c, t = (q - 1 for q in gate.qubits)
        if (x >> c) & 1:
            x ^= 1 << t
        if (z >> t) & 1:
            z ^= 1 << c
    elif gate.kind == "CZ":
        i, j = (q - 1 for q in gate.qubits)
        if (x >> i) & 1:
            z ^= 1 << j
        if (x >> j) & 1:
            z ^= 1 << i
    elif gate.kind == "SWAP":
        i, j = (q - 1 for q in gate.qubits)
        xi, xj = (x >> i) & 1, (x >> j) & 1
        zi, zj = (z >> i) & 1, (z >> j) & 1
        if xi != xj:
            x ^= (1 << i) | (1 << j)
        if zi != zj:
            z ^= (1 << i) | (1 << j)
    return PauliOperator(p.width, x, z)


def apply_circuit(circuit: CliffordCircuit, p: PauliOperator) -> PauliOperator:
    if p.width != circuit.width:
        raise ValueError("pauli width does not match circuit width")
    for g in circuit.gates:
        p = apply_gate(g, p)
    return p


@dataclass(frozen=True)
class SymplecticMap:
    """2w x 2w GF(2) matrix; row i is the image of basis vector e_i."""

    width: int
    rows: Tuple[int, ...]

    @staticmethod
    def identity(width: int) -> "SymplecticMap":
        return SymplecticMap(width, tuple(1 << i for i in range(2 * width)))

    def apply_vec(self, v: int) -> int:
        acc = 0
        i = 0
        while v:
            if v & 1:
                acc ^= self.rows[i]
            v >>= 1
            i += 1
        return acc

    def apply(self, p: PauliOperator) -> PauliOperator:
        return PauliOperator.from_vec(self.width, self.apply_vec(p.vec()))

    def compose(self, other: "SymplecticMap") -> "SymplecticMap":
        """self followed by other."""
        return SymplecticMap(self.width, tuple(matmul(list(self.rows), list(other.rows))))

    def inverse(self) -> "SymplecticMap":
        inv = gf2_invert(list(self.rows), 2 * self.width)
        if inv is None:
            raise ValueError("map is singular")  # cannot happen for symplectic maps
        return SymplecticMap(self.width, tuple(inv))

    def is_symplectic(self) -> bool:
        w = self.width
        for i in range(2 * w):
            pi = PauliOperator.from_vec(w, self.rows[i])
            for j in range(i + 1, 2 * w):
                pj = PauliOperator.from_vec(w, self.rows[j])
                expected = 1 if abs(i - j) == w else 0
                if pi.sp(pj) != expected:
                    return False
        return True


def circuit_to_symplectic(circuit: CliffordCircuit) -> SymplecticMap:
    w = circuit.width
    rows = []
    for i in range(2 * w):
        rows.append(apply_circuit(circuit, PauliOperator.from_vec(w, 1 << i)).vec())
    return SymplecticMap(w, tuple(rows))


def parse_circuit(text: str, width: int | None = None) -> CliffordCircuit:
    """Parse gate-per-line text; '# width: N' comments fix the width."""
    gates: List[CliffordGate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.lower().startswith("width"):
                try:
                    width = int(body.split(":", 1)[1] if ":" in body else body.split()[1])
                except (IndexError, ValueError) as exc:
                    raise ParseError(f"line {lineno}: bad width comment") from exc
            continue
        if not line:
            continue
        fields = line.split()
        kind = fields[0].upper()
        try:
            qubits = tuple(int(f) for f in fields[1:])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad qubit index in {line!r}") from exc
        gates.append(CliffordGate(kind, qubits))
    if width is None:
        width = max((max(g.qubits) for g in gates), default=0)
    return CliffordCircuit(width, tuple(gates))


def circuit_to_text(circuit: CliffordCircuit) -> str:
    lines = [f"# width: {circuit.width}"]
    lines += [str(g) for g in circuit.gates]
    return "\n".join(lines) + "\n"


def circuit_to_json(
    circuit: CliffordCircuit,
    input_roles: Sequence[str] | None = None,
    output_roles: Sequence[str] | None = None,
) -> str:
    doc = {
        "width": circuit.width,
        "gates": [[g.kind, *g.qubits] for g in circuit.gates],
    }
    if input_roles is not None:
        doc["input_roles"] = list(input_roles)
    if output_roles is not None:
        doc["output_roles"] = list(output_roles)
    return json.dumps(doc, indent=2)


def circuit_from_json(text: str) -> CliffordCircuit:
    doc = json.loads(text)
    gates = tuple(CliffordGate(g[0], tuple(g[1:])) for g in doc["gates"])
    return CliffordCircuit(doc["width"], gates)


def wire_roles(n: int, k: int, m: int, direction: str) -> Tuple[List[str], List[str]]:
    """Input/output wire roles under the package wire convention.

    Encoders read (memory, ancilla, info) and write (physical, memory);
    decoders read (memory, received) and write (syndrome, info, memory).
    Memory enters on the first m wires and leaves on the last m.
    """
    if direction == "encoder":
        inp = ["mem"] * m + ["anc"] * (n - k) + ["info"] * k
        out = ["phys"] * n + ["mem"] * m
    elif direction == "decoder":
        inp = ["mem"] * m + ["phys"] * n
        out = ["anc"] * (n - k) + ["info"] * k + ["mem"] * m
    else:
        raise ValueError("direction must be 'encoder' or 'decoder'")
    return inp, out
