import json

import pytest

from zdcodes import tables, zdg
from zdcodes.graphs import diameter
from zdcodes.rings import RingError, make_gf, make_product, make_quotient, make_zn
from zdcodes.tpc import find_tpc
from zdcodes.zdg import (
    artinian_split,
    cap_ann,
    count_zero_divisors,
    cut_vertex_report,
    degree_one_vertices,
    is_exceptional_local_fingerprint,
    local_decider,
    mixed_decider,
    reduced_decider,
    tpc_pair_solver,
    zero_divisor_graph,
)


def brute_edges(ring):
    zs = sorted(ring.zero_divisors_nonzero)
    return {
        (x, y) for i, x in enumerate(zs) for y in zs[i + 1 :] if ring.mul(x, y) == 0
    }


def test_gamma_z12():
    z = zero_divisor_graph(make_zn(12))
    assert z.graph.n == 7
    assert z.elements == (2, 3, 4, 6, 8, 9, 10)
    elem_edges = {(z.elements[a], z.elements[b]) for a, b in z.graph.edges}
    assert elem_edges == {(2, 6), (3, 4), (3, 8), (4, 6), (4, 9), (6, 8), (6, 10), (8, 9)}
    assert elem_edges == brute_edges(make_zn(12))
    assert z.graph.labels[0] == "2"
    assert diameter(z.graph) == 3


def test_gamma_shapes():
    assert zero_divisor_graph(make_product([make_zn(2), make_zn(8)])).graph.n == 11
    g4 = zero_divisor_graph(make_zn(4)).graph
    assert g4.n == 1 and g4.edges == ()
    assert zero_divisor_graph(make_zn(7)).graph.n == 0


def test_cap_ann():
    assert cap_ann(make_zn(12), 2) == {6}
    assert cap_ann(make_zn(16), 8) == {2, 4, 6, 10, 12, 14}
    assert cap_ann(make_zn(9), 3) == {6}
    with pytest.raises(RingError):
        cap_ann(make_zn(12), 5)  # a unit


def test_cap_ann_is_adjacency_and_symmetric():
    for ring in (make_zn(12), make_zn(16), make_product([make_zn(2), make_zn(8)])):
        z = zero_divisor_graph(ring)
        for v, x in enumerate(z.elements):
            nb = {z.elements[w] for w in z.graph.neighbor_sets[v]}
            assert cap_ann(ring, x) == nb
            for y in nb:
                assert x in cap_ann(ring, y)


def test_pair_solver():
    assert tpc_pair_solver(zero_divisor_graph(make_zn(12))) == {4, 6}
    assert tpc_pair_solver(zero_divisor_graph(make_zn(16))) == {2, 8}
    assert tpc_pair_solver(zero_divisor_graph(make_product([make_zn(2), make_zn(8)]))) is None
    assert tpc_pair_solver(zero_divisor_graph(make_zn(7))) is None  # empty graph, no edges


def test_degree_one_vertices():
    assert degree_one_vertices(zero_divisor_graph(make_zn(16))) == {2, 6, 10, 14}
    assert degree_one_vertices(zero_divisor_graph(make_zn(25))) == frozenset()
    assert degree_one_vertices(zero_divisor_graph(make_zn(9))) == {3, 6}


def test_local_decider():
    v = local_decider(make_zn(16))
    assert v.admits and v.witness == {2, 8} and not v.discrepancy
    assert {d.decider_id for d in v.deciders} >= {
        "ann-pair-structural",
        "degree-one",
        "exact-pair",
    }
    v = local_decider(make_zn(9))
    assert v.admits and v.witness == {3, 6}
    v = local_decider(make_zn(25))
    assert not v.admits and not v.discrepancy
    with pytest.raises(RingError):
        local_decider(make_zn(12))
    with pytest.raises(RingError):
        local_decider(make_zn(7))


def test_local_decider_on_quotients():
    v = local_decider(make_quotient(3, (0, 0, 1)))
    assert v.admits and not v.discrepancy  # two mutually annihilating vertices
    v = local_decider(make_quotient(5, (0, 0, 1)))
    assert not v.admits and not v.discrepancy  # a 4-clique


def test_cut_vertex_report():
    rep = cut_vertex_report(make_zn(16))
    assert rep.articulation_elements == {8}
    assert rep.code == {2, 8}
    assert not rep.findings

    rep = cut_vertex_report(make_zn(9))
    assert rep.articulation_elements == frozenset()
    assert rep.code == {3, 6}
    assert not rep.findings

    rep = cut_vertex_report(tables.catalog_ring("Z4X-X2"))
    assert rep.articulation_elements and rep.code is None
    assert not rep.findings

    obj = rep.to_obj()
    assert obj["ring"] and obj["checks"]


def test_exceptional_fingerprint():
    for slug in tables.EXCEPTIONAL_SEVEN:
        assert is_exceptional_local_fingerprint(tables.catalog_ring(slug))
    assert not is_exceptional_local_fingerprint(make_zn(16))
    assert not is_exceptional_local_fingerprint(tables.catalog_ring("Z2XY-RAD2"))


def test_reduced_decider():
    v = reduced_decider([make_zn(2), make_zn(2)])
    assert v.admits and v.witness_names == ("(0,1)", "(1,0)") and not v.discrepancy
    v = reduced_decider([make_zn(2)] * 3)
    assert not v.admits and not v.discrepancy
    v = reduced_decider([make_zn(3), make_gf(2, 2)])
    assert v.admits and not v.discrepancy  # the 5-vertex complete bipartite graph
    with pytest.raises(RingError, match="not a field"):
        reduced_decider([make_zn(4), make_zn(2)])
    with pytest.raises(RingError):
        reduced_decider([make_zn(2)])


def test_mixed_decider_cases():
    v = mixed_decider([make_zn(4)], [make_zn(2)])
    assert v.admits and v.witness_names == ("(0,1)", "(2,0)") and not v.discrepancy
    v = mixed_decider([make_zn(4)], [make_zn(3)])
    assert v.admits and not v.discrepancy
    v = mixed_decider([make_zn(9)], [make_zn(2)])
    assert not v.admits and not v.discrepancy
    v = mixed_decider([make_zn(4), make_zn(4)], [])
    assert not v.admits and not v.discrepancy
    v = mixed_decider([make_quotient(2, (0, 0, 1))], [make_zn(2), make_zn(2)])
    assert not v.admits and not v.discrepancy
    v = mixed_decider([tables.catalog_ring("Z2XY-RAD2")], [make_zn(2)])
    assert not v.admits and not v.discrepancy


def test_mixed_decider_delegation_and_errors():
    assert mixed_decider([make_zn(8)], []).admits  # pure local case
    assert not mixed_decider([], [make_zn(2)] * 3).admits  # pure reduced case
    v = mixed_decider([], [make_zn(5)])
    assert v.admits and v.witness == frozenset()  # field: vacuous empty code
    with pytest.raises(RingError, match="field"):
        mixed_decider([make_zn(2)], [make_zn(2)])
    with pytest.raises(RingError, match="not local"):
        mixed_decider([make_zn(12)], [])
    with pytest.raises(RingError):
        mixed_decider([], [])


def test_verdict_serialization():
    v = mixed_decider([make_zn(4)], [make_zn(2)])
    obj = v.to_obj()
    assert obj["ring"] == "Z4 x Z2"
    assert obj["admits"] is True
    assert obj["witness"] == ["(0,1)", "(2,0)"]
    assert obj["cross_checked"] is True
    assert obj["discrepancies"] == []
    json.dumps(obj)


def test_artinian_split():
    locals_, fields_ = artinian_split(make_zn(12))
    assert [r.name for r in locals_] == ["Z4"] and [r.name for r in fields_] == ["Z3"]
    locals_, fields_ = artinian_split(make_product([make_zn(6), make_zn(4)]))
    assert sorted(r.name for r in locals_) == ["Z4"]
    assert sorted(r.name for r in fields_) == ["Z2", "Z3"]
    assert artinian_split(make_quotient(6, (0, 0, 1))) is None
    locals_, fields_ = artinian_split(make_zn(7))
    assert not locals_ and [r.name for r in fields_] == ["Z7"]


def test_gamma_connected_small_diameter():
    for ring in (make_zn(12), make_zn(16), make_zn(24), make_product([make_zn(4), make_zn(9)])):
        g = zero_divisor_graph(ring).graph
        if g.n >= 2:
            assert g.is_connected() and diameter(g) <= 3


def test_counting_six_forms():
    cases = {
        "R1xF": ([4, 2], 5),
        "R1xR2": ([4, 4], 11),
        "R1xF1xF2": ([4, 2, 2], 13),
        "R1xR2xF": ([4, 4, 2], 27),
        "R1xF1xF2xF3": ([4, 2, 2, 2], 29),
        "R1xR2xR3": ([4, 4, 4], 55),
    }
    for form, (ns, expect) in cases.items():
        closed, rep = count_zero_divisors([make_zn(n) for n in ns])
        assert closed == expect
        assert rep.enumerated == expect
        assert rep.form == form


def test_counting_formula_readings():
    _, rep = count_zero_divisors([make_zn(4), make_zn(2)])
    assert rep.formula_by_reading["nonzero"] == 5
    assert rep.formula_by_reading["units"] == 4
    _, rep = count_zero_divisors([make_zn(4), make_zn(4)])
    assert all(v != 11 for v in rep.formula_by_reading.values())
    _, rep = count_zero_divisors([make_zn(4), make_zn(4), make_zn(2)])
    assert rep.formula_by_reading["nonzero-emended"] == 27
    assert rep.formula_by_reading["nonzero"] == 28  # the literal |F| term overshoots
    _, rep = count_zero_divisors([make_zn(4), make_zn(4), make_zn(4)])
    assert all(v != 55 for v in rep.formula_by_reading.values())


def test_counting_closed_form_matches_enumeration_on_catalog():
    rings = [
        [make_zn(12)],
        [make_zn(4), make_zn(9)],
        [make_gf(2, 2), make_gf(3, 2)],
        [tables.catalog_ring("Z8X-2X-X2p4"), make_zn(3)],
    ]
    for factors in rings:
        closed, rep = count_zero_divisors(factors)
        assert rep.enumerated == closed


def test_exact_search_agrees_on_small_gammas():
    for n in (8, 9, 12, 16, 18, 20, 24, 25, 27):
        z = zero_divisor_graph(make_zn(n))
        pair = tpc_pair_solver(z)
        exact = find_tpc(z.graph)
        assert (pair is None) == (exact is None)
        if exact is not None:
            assert len(exact) == 2
