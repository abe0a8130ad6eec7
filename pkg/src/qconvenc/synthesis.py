"""Completing partial symplectic maps and decomposing them into gates.

A frame transformation is specified by a handful of rows "this input Pauli
must map to that output Pauli".  When the rows preserve symplectic
products and are independent on both sides, they extend to a full
symplectic matrix; the extension is made deterministic by completing both
sides to hyperbolic bases with lexicographically smallest choices.  The
full matrix is then peeled into {H, P, CNOT, CZ, SWAP} one qubit at a
time, which keeps the gate count O(width^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import gf2
from .circuit import (
    CliffordCircuit,
    CliffordGate,
    SymplecticMap,
    apply_gate,
    circuit_to_symplectic,
)
from .errors import MapConsistencyError, SynthesisError
from .pauli import PauliOperator

__all__ = [
    "PartialMap",
    "check_consistency",
    "complete_to_symplectic",
    "synthesize_circuit",
    "complete_and_synthesize",
    "gate_count_bound",
]


def _sp(u: int, v: int, width: int) -> int:
    mask = (1 << width) - 1
    return gf2.parity(((u & mask) & (v >> width)) ^ ((u >> width) & (v & mask)))


def _dual(v: int, width: int) -> int:
    """Row r with parity(r & u) == sp(v, u) for every u."""
    mask = (1 << width) - 1
    return (v >> width) | ((v & mask) << width)


@dataclass(frozen=True)
class PartialMap:
    """Rows (input vector, output vector) a symplectic map must satisfy."""

    width: int
    rows: Tuple[Tuple[int, int], ...]

    @staticmethod
    def from_operators(rows: Sequence[Tuple[PauliOperator, PauliOperator]]) -> "PartialMap":
        if not rows:
            raise ValueError("need at least one row")
        w = rows[0][0].width
        for src, dst in rows:
            if src.width != w or dst.width != w:
                raise ValueError("all rows must share one width")
        return PartialMap(w, tuple((src.vec(), dst.vec()) for src, dst in rows))


def check_consistency(partial: PartialMap) -> None:
    """Raise MapConsistencyError unless some Clifford satisfies the rows."""
    w = partial.width
    ins = [r[0] for r in partial.rows]
    outs = [r[1] for r in partial.rows]
    if gf2.rank(ins) != len(ins):
        raise MapConsistencyError("input rows are linearly dependent")
    if gf2.rank(outs) != len(outs):
        raise MapConsistencyError("output rows are linearly dependent")
    for i in range(len(ins)):
        for j in range(i + 1, len(ins)):
            a = _sp(ins[i], ins[j], w)
            b = _sp(outs[i], outs[j], w)
            if a != b:
                raise MapConsistencyError(
                    f"rows {i + 1} and {j + 1} have symplectic product "
                    f"{a} on inputs but {b} on outputs"
                )


def _solve_partner(placed: List[int], c: int, width: int) -> int:
    """Lex-deterministic d with sp(c, d) = 1 and sp(e, d) = 0 for placed e != c."""
    rows, rhs = [], []
    for e in placed:
        rows.append(_dual(e, width))
        rhs.append(1 if e == c else 0)
    d = gf2.solve(rows, rhs, 2 * width)
    if d is None:
        raise SynthesisError("no symplectic partner exists; inputs were inconsistent")
    return d


def _complete_side(pairs: List[Tuple[int, int]], isos: List[int], width: int) -> List[Tuple[int, int]]:
    """Extend hyperbolic pairs + isotropic vectors to width hyperbolic pairs."""
    pairs = list(pairs)
    pending = list(isos)
    while pending:
        c = pending.pop(0)
        placed = [v for ab in pairs for v in ab] + [c] + pending
        d = _solve_partner(placed, c, width)
        pairs.append((c, d))
    while len(pairs) < width:
        placed = [v for ab in pairs for v in ab]
        comp = gf2.nullspace([_dual(e, width) for e in placed], 2 * width)
        if not comp:
            raise SynthesisError("symplectic complement vanished early")
        c = comp[0]
        d = _solve_partner(placed + [c], c, width)
        pairs.append((c, d))
    return pairs


def complete_to_symplectic(partial: PartialMap) -> SymplecticMap:
    """Deterministic full symplectic matrix agreeing with the rows."""
    check_consistency(partial)
    w = partial.width
    work = list(partial.rows)
    hyper: List[Tuple[Tuple[int, int], Tuple[int, int]]] = []  # ((a, a'), (b, b'))
    iso: List[Tuple[int, int]] = []
    # symplectic Gram-Schmidt run jointly: every row operation is mirrored
    # on the output side, so each transformed (input, output) pair is still
    # a requirement the final map must satisfy.
    while work:
        u, uv = work.pop(0)
        pidx = None
        for i, (x, _) in enumerate(work):
            if _sp(u, x, w):
                pidx = i
                break
        if pidx is None:
            iso.append((u, uv))
            continue
        v, vv = work.pop(pidx)
        hyper.append(((u, uv), (v, vv)))
        updated = []
        for x, xv in work:
            cu, cv = _sp(x, u, w), _sp(x, v, w)
            updated.append((x ^ (v if cu else 0) ^ (u if cv else 0),
                            xv ^ (vv if cu else 0) ^ (uv if cv else 0)))
        work = updated
    in_pairs = _complete_side([(a[0], b[0]) for a, b in hyper], [c[0] for c in iso], w)
    out_pairs = _complete_side([(a[1], b[1]) for a, b in hyper], [c[1] for c in iso], w)
    # basis rows ordered like the standard basis: X parts then Z parts
    a_rows = [p[0] for p in in_pairs] + [p[1] for p in in_pairs]
    b_rows = [p[0] for p in out_pairs] + [p[1] for p in out_pairs]
    a_inv = gf2.invert(a_rows, 2 * w)
    if a_inv is None:
        raise SynthesisError("completed input basis is singular")
    smap = SymplecticMap(w, tuple(gf2.matmul(a_inv, b_rows)))
    if not smap.is_symplectic():
        raise SynthesisError("completed matrix fails the symplectic check")
    for src, dst in partial.rows:
        if smap.apply_vec(src) != dst:
            raise SynthesisError("completed matrix violates a required row")
    return smap


def _reduce_to_x(rows: List[int], q: int, width: int, lock_z_pivot: bool) -> List[CliffordGate]:
    """Emit gates turning row of e_{x_q} into e_{x_q}; mutates rows in place.

    With lock_z_pivot the pivot is forced to q and no H/SWAP is used on it,
    which keeps e_{z_q} fixed (needed for the conjugated second phase).
    """
    w = width
    gates: List[CliffordGate] = []

    def emit(kind: str, *qubits: int) -> None:
        g = CliffordGate(kind, tuple(qubits))
        gates.append(g)
        for i in range(2 * w):
            rows[i] = apply_gate(g, PauliOperator.from_vec(w, rows[i])).vec()

    r = rows[q - 1]

    def xbit(v: int, j: int) -> int:
        return (v >> (j - 1)) & 1

    def zbit(v: int, j: int) -> int:
        return (v >> (w + j - 1)) & 1

    # pivot: q itself when it carries support, else the lowest later qubit
    pivot = None
    if xbit(r, q) or zbit(r, q):
        pivot = q
    else:
        for j in range(q + 1, w + 1):
            if xbit(r, j) or zbit(r, j):
                pivot = j
                break
    if pivot is None:
        raise SynthesisError("row image vanished; matrix was not symplectic")
    if lock_z_pivot and pivot != q:
        raise SynthesisError("locked pivot has no support at its own qubit")
    j = pivot
    r = rows[q - 1]
    if not xbit(r, j):
        if lock_z_pivot:
            raise SynthesisError("locked pivot lost its X support")
        emit("H", j)
    r = rows[q - 1]
    if zbit(r, j):
        emit("P", j)
    for l in range(q, w + 1):
        if l != j and xbit(rows[q - 1], l):
            emit("CNOT", j, l)
    for l in range(q, w + 1):
        if l != j and zbit(rows[q - 1], l):
            emit("CZ", j, l)
    if zbit(rows[q - 1], j):
        emit("P", j)
    if j != q:
        emit("SWAP", j, q)
    return gates


def synthesize_circuit(target: SymplecticMap) -> CliffordCircuit:
    """Gate sequence realizing the matrix (verified before returning)."""
    if not target.is_symplectic():
        raise SynthesisError("target matrix is not symplectic")
    w = target.width
    rows = list(target.rows)
    emitted: List[CliffordGate] = []
    for q in range(1, w + 1):
        emitted += _reduce_to_x(rows, q, w, lock_z_pivot=False)
        # fix e_{z_q} by conjugating with H(q): the inner reduction only
        # emits P/CNOT/CZ on pivot q, all of which leave e_{z_q} alone.
        hq = CliffordGate("H", (q,))
        for i in range(2 * w):
            rows[i] = apply_gate(hq, PauliOperator.from_vec(w, rows[i])).vec()
        emitted.append(hq)
        rows[w + q - 1], rows[q - 1] = rows[q - 1], rows[w + q - 1]
        emitted += _reduce_to_x(rows, q, w, lock_z_pivot=True)
        rows[w + q - 1], rows[q - 1] = rows[q - 1], rows[w + q - 1]
        for i in range(2 * w):
            rows[i] = apply_gate(hq, PauliOperator.from_vec(w, rows[i])).vec()
        emitted.append(hq)
    ident = SymplecticMap.identity(w)
    if tuple(rows) != ident.rows:
        raise SynthesisError("elimination did not reach the identity")
    # every gate kind used squares to the identity on Pauli vectors, so the
    # inverse sequence is just the reverse
    circuit = CliffordCircuit(w, tuple(reversed(emitted)))
    check = circuit_to_symplectic(circuit)
    if check.rows != target.rows:
        raise SynthesisError("synthesized circuit does not realize the target")
    if len(circuit) > gate_count_bound(w):
        raise SynthesisError(
            f"gate count {len(circuit)} exceeds the {gate_count_bound(w)} budget"
        )
    return circuit


def gate_count_bound(width: int) -> int:
    return 10 * width * width


def complete_and_synthesize(partial: PartialMap) -> Tuple[SymplecticMap, CliffordCircuit]:
    smap = complete_to_symplectic(partial)
    return smap, synthesize_circuit(smap)
