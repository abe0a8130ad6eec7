"""Encoder skeletons, memory commutation requirements and assignments.

An encoder for a code with constraint length nu is pinned down, up to the
choice of memory operators, by one row per (generator, frame): frame 1
consumes Z on the generator's ancilla wire, later frames consume identity,
every frame emits that generator's frame on the physical wires, and
unknown memory operators g_{a,t} sit at the frame boundaries (identity
before the first and after the last frame).

Because conjugation preserves symplectic products, the unknowns' pairwise
products are forced.  Telescoping the per-row relation down to the
identity boundary gives

    sp(g_{a,s}, g_{b,t}) =
        sum_{r=0..min(s,t)-1} sp(IN_a[s-r], IN_b[t-r]) + sp(OUT_a[s-r], OUT_b[t-r])

and reaching the opposite boundary (one index at the full span) must give
zero, which is checked explicitly; a nonzero value there means no encoder
with this row structure exists.  The same machinery, with different
per-frame inputs/outputs, produces decoder skeletons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import gf2
from .code import ConvolutionalCode, FramedPauliSequence
from .errors import SkeletonInconsistencyError
from .pauli import PauliOperator

__all__ = [
    "Chain",
    "TransformationSkeleton",
    "build_skeleton",
    "CommutationRequirement",
    "required_commutation_matrix",
    "skeleton_commutation_matrix",
    "GramSchmidtResult",
    "symplectic_gram_schmidt",
    "minimal_memory",
    "MemoryAssignment",
    "assign_memory",
    "check_assignment",
    "partial_rows",
]


@dataclass(frozen=True)
class Chain:
    """Per-frame known inputs and outputs of one streamed operator."""

    label: str
    inputs: Tuple[PauliOperator, ...]
    outputs: Tuple[PauliOperator, ...]

    def __post_init__(self):
        if len(self.inputs) != len(self.outputs):
            raise ValueError("chain inputs and outputs must align")

    @property
    def span(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class TransformationSkeleton:
    """Row structure of a frame-wise Clifford transformation.

    direction is "encoder" (rows: (mem g_{a,t-1}, IN) -> (OUT, g_{a,t}))
    or "decoder" (same boundary structure, decoder wire roles).
    """

    n: int
    k: int
    direction: str
    chains: Tuple[Chain, ...]

    def unknowns(self) -> List[Tuple[int, int]]:
        """Unknown memory slots as (chain index, boundary t), both 1-based,
        ordered t-major then chain (g1 = chain1 t1, g2 = chain2 t1, ...)."""
        ids = []
        max_span = max((c.span for c in self.chains), default=0)
        for t in range(1, max_span):
            for i, c in enumerate(self.chains, 1):
                if t < c.span:
                    ids.append((i, t))
        return ids

    def rows(self) -> List[Tuple[int, int]]:
        """Display rows as (chain, frame) ordered t-major then chain."""
        out = []
        max_span = max((c.span for c in self.chains), default=0)
        for t in range(1, max_span + 1):
            for i, c in enumerate(self.chains, 1):
                if t <= c.span:
                    out.append((i, t))
        return out

    @property
    def unknown_count(self) -> int:
        return len(self.unknowns())


def build_skeleton(code: ConvolutionalCode) -> TransformationSkeleton:
    """Encoder skeleton: (n-k)*nu rows, (n-k)*(nu-1) unknowns."""
    n, k, nu = code.n, code.k, code.nu
    chains = []
    for a, gen in enumerate(code.generators, 1):
        # within the n physical input wires the layout is (anc 1..n-k, info),
        # so ancilla a is 0-based position a-1; only frame 1 consumes it.
        ins = [PauliOperator.single(n, a - 1, "Z") if t == 1 else PauliOperator.identity(n)
               for t in range(1, nu + 1)]
        outs = [gen.frame(t) for t in range(1, nu + 1)]
        chains.append(Chain(f"generator {a}", tuple(ins), tuple(outs)))
    return TransformationSkeleton(n, k, "encoder", tuple(chains))


@dataclass(frozen=True)
class CommutationRequirement:
    """Symmetric GF(2) matrix of required products between unknowns."""

    size: int
    rows: Tuple[int, ...]  # row i as a bitset over columns
    labels: Tuple[Tuple[int, int], ...]  # (chain, t) per index

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def anticommuting_pairs(self) -> List[Tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.size)
            for j in range(i + 1, self.size)
            if self.entry(i, j)
        ]


def _telescope(ci: Chain, s: int, cj: Chain, t: int) -> int:
    acc = 0
    for r in range(min(s, t)):
        acc ^= ci.inputs[s - 1 - r].sp(cj.inputs[t - 1 - r])
        acc ^= ci.outputs[s - 1 - r].sp(cj.outputs[t - 1 - r])
    return acc


def skeleton_commutation_matrix(skeleton: TransformationSkeleton) -> CommutationRequirement:
    unknowns = skeleton.unknowns()
    chains = skeleton.chains
    index = {u: pos for pos, u in enumerate(unknowns)}
    size = len(unknowns)
    rows = [0] * size
    for (i, s), pi in index.items():
        for (j, t), pj in index.items():
            if _telescope(chains[i - 1], s, chains[j - 1], t):
                rows[pi] |= 1 << pj
    # boundary consistency: with one side at its full span the memory is
    # identity, so the telescoped product must vanish; otherwise the row
    # structure admits no Clifford realization.
    for i, ci in enumerate(chains, 1):
        for j, cj in enumerate(chains, 1):
            for t in range(1, cj.span + 1):
                if _telescope(ci, ci.span, cj, t):
                    raise SkeletonInconsistencyError(
                        f"boundary product of chain {i} (span {ci.span}) with "
                        f"chain {j} at frame {t} is forced to 1"
                    )
    for pos in range(size):
        if (rows[pos] >> pos) & 1:
            raise SkeletonInconsistencyError(
                f"unknown {pos + 1} is forced to anticommute with itself"
            )
    return CommutationRequirement(size, tuple(rows), tuple(unknowns))


def required_commutation_matrix(code: ConvolutionalCode) -> CommutationRequirement:
    return skeleton_commutation_matrix(build_skeleton(code))


@dataclass(frozen=True)
class GramSchmidtResult:
    """Hyperbolic pairs then isotropic remainder, with the basis change.

    basis_change row r expresses transformed generator r as a GF(2)
    combination of the original ones; rows are ordered pair1a, pair1b,
    pair2a, ..., then the isotropic generators.  pair/isotropic labels
    are the lowest original index appearing in each transformed row.
    """

    pairs: Tuple[Tuple[int, int], ...]
    isotropic: Tuple[int, ...]
    basis_change: Tuple[int, ...]


def symplectic_gram_schmidt(matrix: CommutationRequirement) -> GramSchmidtResult:
    p = matrix.size

    def form(u: int, v: int) -> int:
        # bilinear form induced by M on GF(2) combinations of the unknowns
        acc = 0
        j = 0
        vv = v
        while vv:
            if vv & 1:
                acc ^= u & matrix.rows[j]
            vv >>= 1
            j += 1
        return gf2.parity(acc)

    remaining = [(i, 1 << i) for i in range(p)]
    pair_rows: List[Tuple[int, int]] = []
    pair_labels: List[Tuple[int, int]] = []
    iso_rows: List[int] = []
    iso_labels: List[int] = []
    while remaining:
        lead, v = remaining.pop(0)
        partner_pos = None
        for pos, (_, w) in enumerate(remaining):
            if form(v, w):
                partner_pos = pos
                break
        if partner_pos is None:
            iso_rows.append(v)
            iso_labels.append(lead)
            continue
        plead, w = remaining.pop(partner_pos)
        pair_rows.append((v, w))
        pair_labels.append((lead, plead))
        remaining = [
            (l, u ^ (w if form(u, v) else 0) ^ (v if form(u, w) else 0))
            for (l, u) in remaining
        ]
    basis = []
    for v, w in pair_rows:
        basis.extend([v, w])
    basis.extend(iso_rows)
    return GramSchmidtResult(tuple(pair_labels), tuple(iso_labels), tuple(basis))


def minimal_memory(matrix: CommutationRequirement) -> int:
    """Memory qubits needed: one per hyperbolic pair plus one per isotropic
    generator (= rank/2 + (p - rank))."""
    sgs = symplectic_gram_schmidt(matrix)
    return len(sgs.pairs) + len(sgs.isotropic)


@dataclass(frozen=True)
class MemoryAssignment:
    m: int
    operators: Tuple[PauliOperator, ...]


def check_assignment(matrix: CommutationRequirement, assignment: MemoryAssignment) -> Optional[Tuple[int, int]]:
    """None if the assignment realizes M with independent operators,
    else the offending (i, j) pair ((i, i) flags a dependence)."""
    ops = assignment.operators
    if len(ops) != matrix.size:
        raise ValueError("assignment size differs from the requirement")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if ops[i].sp(ops[j]) != matrix.entry(i, j):
                return (i, j)
    if gf2.rank([op.vec() for op in ops]) != len(ops):
        dep = len(ops) - 1
        return (dep, dep)
    return None


def assign_memory(matrix: CommutationRequirement) -> MemoryAssignment:
    """Concrete memory operators realizing M on the minimal qubit count.

    Transformed pair r gets (X, Z) on memory qubit r, isotropic j gets Z on
    qubit (#pairs + j); the original unknowns are pulled back through the
    inverse basis change (products of Paulis = XOR of assignments).
    """
    sgs = symplectic_gram_schmidt(matrix)
    p = matrix.size
    npairs = len(sgs.pairs)
    m = npairs + len(sgs.isotropic)
    canonical: List[PauliOperator] = []
    for r in range(npairs):
        canonical.append(PauliOperator.single(m, r, "X"))
        canonical.append(PauliOperator.single(m, r, "Z"))
    for j in range(len(sgs.isotropic)):
        canonical.append(PauliOperator.single(m, npairs + j, "Z"))
    if p == 0:
        return MemoryAssignment(0, ())
    binv = gf2.invert(list(sgs.basis_change), p)
    assert binv is not None, "basis change must be invertible"
    ops = []
    for c in range(p):
        op = PauliOperator.identity(m)
        row = binv[c]
        r = 0
        while row:
            if row & 1:
                op = op * canonical[r]
            row >>= 1
            r += 1
        ops.append(op)
    result = MemoryAssignment(m, tuple(ops))
    bad = check_assignment(matrix, result)
    assert bad is None, f"constructed assignment violates M at {bad}"
    return result


def partial_rows(
    skeleton: TransformationSkeleton, assignment: MemoryAssignment
) -> List[Tuple[PauliOperator, PauliOperator]]:
    """Skeleton rows as concrete (input, output) operator pairs.

    Memory sits on the first m wires of the input and the last m wires of
    the output; the boundary memory operators (t = 0 and t = span) are the
    identity.
    """
    from .pauli import tensor

    lookup = dict(zip(skeleton.unknowns(), assignment.operators))
    m = assignment.m
    ident = PauliOperator.identity(m)
    rows: List[Tuple[PauliOperator, PauliOperator]] = []
    for i, chain in enumerate(skeleton.chains, 1):
        for t in range(1, chain.span + 1):
            gin = lookup.get((i, t - 1), ident)
            gout = lookup.get((i, t), ident)
            rows.append(
                (tensor(gin, chain.inputs[t - 1]), tensor(chain.outputs[t - 1], gout))
            )
    return rows
