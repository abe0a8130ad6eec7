"""Zero-weight cycle detection, cross-checked by exhaustive enumeration.

The implementation walks the functional transition diagram; the oracle
here rebuilds the full edge list by brute force over every (memory state,
valid frame input) pair and decides catastrophicity by reachability, so
the two routes share no code.
"""

import random

import pytest

from qconvenc import (
    CliffordCircuit,
    CliffordGate,
    PauliOperator,
    SymplecticMap,
    circuit_to_symplectic,
    tensor,
)
from qconvenc.catastrophic import (
    ENUM_CAP,
    admissible_cycle_states,
    complete_noncatastrophic,
    is_noncatastrophic,
    is_noncatastrophic_decoder,
    subgroup_elements,
    zero_weight_graph,
)
from qconvenc.errors import CompletionSearchExhausted
from qconvenc.library import (
    FGG_CODE,
    FGG_ENCODER,
    GR_CODE,
    GR_COMPLETION_ROWS,
    GR_MEMORY_CHOICE,
)
from qconvenc.skeleton import (
    MemoryAssignment,
    assign_memory,
    build_skeleton,
    partial_rows,
    skeleton_commutation_matrix,
)
from qconvenc.synthesis import PartialMap

from conftest import random_circuit

P = PauliOperator.from_string


def all_paulis(m):
    return [PauliOperator(m, x, z) for x in range(1 << m) for z in range(1 << m)]


def brute_force_edges(smap: SymplecticMap, n: int, k: int, m: int, direction: str):
    """Every zero-physical-weight transition, by forward enumeration of all
    4^m memory states x 2^(n-k) ancilla patterns x 4^k info inputs."""
    edges = []
    if direction == "encoder":
        for mu in all_paulis(m):
            for anc_z in range(1 << (n - k)):
                anc = PauliOperator(n - k, 0, anc_z)
                for info in all_paulis(k):
                    out = smap.apply(tensor(mu, anc, info))
                    if not out.part(0, n).is_identity():
                        continue
                    edges.append((mu, out.part(n, n + m), info.weight()))
    else:
        # zero weight on the received side leaves no freedom at all
        for mu in all_paulis(m):
            out = smap.apply(tensor(mu, PauliOperator.identity(n)))
            if out.part(0, n - k).x:
                continue
            edges.append((mu, out.part(n, n + m), out.part(n - k, n).weight()))
    return edges


def brute_force_noncatastrophic(smap, n, k, m, direction):
    """A map is catastrophic iff some positive-logical-weight zero-weight
    edge lies on a cycle: its head must reach its tail."""
    edges = brute_force_edges(smap, n, k, m, direction)
    succ = {}
    for src, dst, _ in edges:
        succ.setdefault(src.vec(), set()).add(dst.vec())
    for src, dst, lw in edges:
        if lw == 0:
            continue
        # BFS from dst back to src
        seen, frontier = {dst.vec()}, [dst.vec()]
        while frontier:
            cur = frontier.pop()
            if cur == src.vec():
                return False
            for nxt in succ.get(cur, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    return True


TOY_CNOT = CliffordCircuit(2, (CliffordGate("CNOT", (1, 2)),))


def test_reference_encoder_graph_is_identity_self_loop(fgg_reference_encoder):
    g = zero_weight_graph(fgg_reference_encoder, 3, 1, 1)
    assert set(g.edges) == {0}
    edge = g.edges[0]
    assert edge.before.is_identity() and edge.after.is_identity()
    assert edge.logical.is_identity() and edge.ancilla.is_identity()


def test_synthesized_encoder_graph_matches(fgg_synthesis):
    g = zero_weight_graph(fgg_synthesis.map, 3, 1, 1)
    assert set(g.edges) == {0}


def test_memoryless_encoder_graph():
    # any m=0 map has the one node and its trivial self-loop
    g = zero_weight_graph(SymplecticMap.identity(2), 2, 1, 0)
    assert set(g.edges) == {0}
    assert g.edges[0].before.width == 0


def test_reference_encoder_noncatastrophic(fgg_reference_encoder):
    v = is_noncatastrophic(fgg_reference_encoder, 3, 1, 1)
    assert v.non_catastrophic and v.witness is None
    assert v.direction == "encoder"


def test_toy_cnot_encoder_catastrophic():
    v = is_noncatastrophic(TOY_CNOT, 1, 1, 1)
    assert not v.non_catastrophic
    assert v.witness is not None
    total = sum(e.logical_weight for e in v.witness)
    assert total > 0
    # the witness must be a genuine zero-weight cycle of the map
    smap = circuit_to_symplectic(TOY_CNOT)
    for e in v.witness:
        out = smap.apply(tensor(e.before, e.ancilla, e.logical))
        assert out.part(0, 1).is_identity()
        assert out.part(1, 2) == e.after
    heads = [e.after.vec() for e in v.witness]
    tails = [e.before.vec() for e in v.witness]
    assert sorted(heads) == sorted(tails)


def test_toy_cnot_decoder_catastrophic():
    v = is_noncatastrophic_decoder(TOY_CNOT, 1, 1, 1)
    assert not v.non_catastrophic


def test_identity_decoder_not_catastrophic():
    # an identity decoder forwards memory to the info wire only by first
    # consuming received content, so no zero-weight cycle carries logicals;
    # the brute-force route agrees
    ident = SymplecticMap.identity(2)
    assert is_noncatastrophic_decoder(ident, 1, 1, 1).non_catastrophic
    assert brute_force_noncatastrophic(ident, 1, 1, 1, "decoder")


def test_memoryless_decoder_true():
    v = is_noncatastrophic_decoder(SymplecticMap.identity(2), 2, 1, 0)
    assert v.non_catastrophic


def test_catastrophic_fixture_verdict(catastrophic_encoder_map):
    v = is_noncatastrophic(catastrophic_encoder_map, 2, 1, 1)
    assert not v.non_catastrophic
    assert any(e.logical_weight for e in v.witness)


def test_verdicts_match_brute_force_corpus(
    fgg_reference_encoder, fgg_synthesis, catastrophic_encoder_map
):
    corpus = [
        (circuit_to_symplectic(fgg_reference_encoder), 3, 1, 1),
        (fgg_synthesis.map, 3, 1, 1),
        (catastrophic_encoder_map, 2, 1, 1),
        (circuit_to_symplectic(TOY_CNOT), 1, 1, 1),
        (SymplecticMap.identity(2), 1, 1, 1),
    ]
    for smap, n, k, m in corpus:
        got = is_noncatastrophic(smap, n, k, m).non_catastrophic
        want = brute_force_noncatastrophic(smap, n, k, m, "encoder")
        assert got == want, (n, k, m)
        gotd = is_noncatastrophic_decoder(smap, n, k, m).non_catastrophic
        wantd = brute_force_noncatastrophic(smap, n, k, m, "decoder")
        assert gotd == wantd, (n, k, m)


def test_verdicts_match_brute_force_random():
    rng = random.Random(50)
    shapes = [(1, 2, 1), (2, 2, 1), (2, 3, 2), (1, 1, 1), (2, 1, 1)]
    for trial in range(60):
        m, n, k = shapes[trial % len(shapes)]
        smap = circuit_to_symplectic(random_circuit(m + n, 6 * (m + n), rng))
        got = is_noncatastrophic(smap, n, k, m).non_catastrophic
        want = brute_force_noncatastrophic(smap, n, k, m, "encoder")
        assert got == want, (trial, m, n, k)
        gotd = is_noncatastrophic_decoder(smap, n, k, m).non_catastrophic
        wantd = brute_force_noncatastrophic(smap, n, k, m, "decoder")
        assert gotd == wantd, (trial, m, n, k)


def test_enum_cap_guard():
    with pytest.raises(ValueError):
        zero_weight_graph(SymplecticMap.identity(ENUM_CAP + 3), 2, 1, ENUM_CAP + 1)


def test_subgroup_elements_spans():
    gens = [P("ZI"), P("IZ")]
    elems = subgroup_elements(gens, 2)
    assert {e.to_string() for e in elems} == {"II", "ZI", "IZ", "ZZ"}
    assert [e.to_string() for e in subgroup_elements([], 2)] == ["II"]


def test_admissible_states_trivial_for_rate_third():
    # commutant generator list is empty: cycles can only sit at the identity
    skel = build_skeleton(FGG_CODE)
    asg = assign_memory(skeleton_commutation_matrix(skel))
    gens = admissible_cycle_states(skel, asg)
    assert gens == []
    assert [e.to_string() for e in subgroup_elements(gens, 1)] == ["I"]


def test_admissible_states_css_code_displayed_form():
    skel = build_skeleton(GR_CODE)
    asg = MemoryAssignment(6, GR_MEMORY_CHOICE)
    gens = admissible_cycle_states(skel, asg)
    got = {e.to_string() for e in subgroup_elements(gens, 6)}
    # Z factors free on memory qubits 1, 2, 5 and 6; identity on 3 and 4
    want = set()
    for b1 in "IZ":
        for b2 in "IZ":
            for b5 in "IZ":
                for b6 in "IZ":
                    want.add(b1 + b2 + "II" + b5 + b6)
    assert got == want
    assert len(got) == 16


def test_admissible_states_are_commutant():
    # independent route: the subgroup must be exactly the m-qubit Paulis
    # commuting with every assigned memory operator
    skel = build_skeleton(GR_CODE)
    asg = MemoryAssignment(6, GR_MEMORY_CHOICE)
    gens = admissible_cycle_states(skel, asg)
    got = {e.vec() for e in subgroup_elements(gens, 6)}
    want = {
        p.vec()
        for p in all_paulis(6)
        if all(p.sp(op) == 0 for op in asg.operators)
    }
    assert got == want


def test_unconstrained_memory_admits_full_group():
    # a span-1 code leaves no unknowns, so nothing constrains the cycle
    # states and the admissible subgroup is the whole Pauli group
    from qconvenc import parse_code

    skel = build_skeleton(parse_code("n=2\nZZ\n"))
    gens = admissible_cycle_states(skel, MemoryAssignment(1, ()))
    assert len(subgroup_elements(gens, 1)) == 4


def test_completion_search_finds_rate_third_encoder():
    skel = build_skeleton(FGG_CODE)
    asg = assign_memory(skeleton_commutation_matrix(skel))
    partial = PartialMap.from_operators(partial_rows(skel, asg))
    circ = complete_noncatastrophic(partial, skel, asg)
    v = is_noncatastrophic(circ, 3, 1, 1)
    assert v.non_catastrophic


def test_css_completion_rows_noncatastrophic(gr_synthesis):
    assert gr_synthesis.verdict.non_catastrophic
    assert gr_synthesis.memory == 6
    m = gr_synthesis.map
    for src, dst in GR_COMPLETION_ROWS:
        assert m.apply(src) == dst


def test_bare_css_search_exhausts_small_budget():
    skel = build_skeleton(GR_CODE)
    asg = MemoryAssignment(6, GR_MEMORY_CHOICE)
    partial = PartialMap.from_operators(partial_rows(skel, asg))
    with pytest.raises(CompletionSearchExhausted):
        complete_noncatastrophic(partial, skel, asg, max_candidates=50)
