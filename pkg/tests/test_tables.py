import pytest

from zdcodes import tables
from zdcodes.rings import RingError
from zdcodes.tables import TableRingError, TableRingSpec, catalog_ring, make_table_ring


def test_catalog_loads_and_validates():
    for slug in tables.catalog_names():
        ring = catalog_ring(slug)
        assert ring.is_local and not ring.is_reduced


def test_exceptional_seven_shape():
    assert len(tables.EXCEPTIONAL_SEVEN) == 7
    for slug in tables.EXCEPTIONAL_SEVEN:
        ring = catalog_ring(slug)
        assert ring.order == 16
        assert len(ring.zero_divisors_nonzero) + 1 > 2
        # the defining exceptional property: no annihilator of size two
        assert all(len(ring.annihilator(x)) != 2 for x in ring.zero_divisors_nonzero)


def test_supplementary_fixture():
    ring = catalog_ring("Z2XY-RAD2")
    assert ring.order == 8
    assert len(ring.zero_divisors_nonzero) == 3  # the squared radical collapses


def test_case_insensitive_lookup():
    assert catalog_ring("z8x-2x-x2p4").name == catalog_ring("Z8X-2X-X2p4").name


def test_unknown_name_lists_known():
    with pytest.raises(TableRingError, match="known names"):
        tables.load_catalog_spec("missing")


def test_degenerate_single_modulus():
    spec = TableRingSpec("tiny", (2,), (1,), (((1,),),))
    ring = make_table_ring(spec)
    assert ring.order == 2 and ring.is_field


def test_example_spec_z8():
    spec = TableRingSpec("Z8[X]/(2X,X^2+4)", (8, 2), (1, 0),
                         (((1, 0), (0, 1)), ((0, 1), (4, 0))))
    ring = make_table_ring(spec)
    assert ring.order == 16
    # X * X = 4 in this presentation: X has index 1, the constant 4 index 8
    assert ring.mul(1, 1) == 8


def test_mutation_is_rejected():
    spec = tables.load_catalog_spec("Z4X-X2")
    rows = [list(map(tuple, row)) for row in spec.products]
    rows[0][1] = (0, 0)  # breaks 1*X = X
    rows[1][0] = (0, 0)
    bad = TableRingSpec(spec.name, spec.moduli, spec.one, tuple(tuple(r) for r in rows))
    with pytest.raises(RingError):  # full axiom validation names the failing law
        make_table_ring(bad)


def test_asymmetric_products_rejected():
    spec = TableRingSpec("bad", (2, 2), (1, 0), (((1, 0), (0, 1)), ((1, 1), (0, 0))))
    with pytest.raises(TableRingError, match="differ"):
        make_table_ring(spec)


def test_ill_defined_bilinear_extension_rejected():
    # m_1 * (e1 e1) = 2 * (1,0) is nonzero mod (4,2): scaling is inconsistent
    spec = TableRingSpec("bad", (4, 2), (1, 0), (((1, 0), (0, 1)), ((0, 1), (1, 0))))
    with pytest.raises(TableRingError, match="ill-defined"):
        make_table_ring(spec)


def test_shape_errors():
    with pytest.raises(TableRingError):
        make_table_ring(TableRingSpec("bad", (), (), ()))
    with pytest.raises(TableRingError):
        make_table_ring(TableRingSpec("bad", (2,), (1, 0), (((1,),),)))


@pytest.mark.parametrize(
    "slug,poly",
    [("Z4X-X2", (0, 0, 1)), ("Z4X-X2p2X", (0, 2, 1))],
)
def test_univariate_fixtures_match_quotient_construction(slug, poly):
    # two fixtures have one-variable presentations, so the polynomial
    # quotient constructor provides an independent second build
    from zdcodes.rings import make_quotient
    from zdcodes.zdg import tpc_pair_solver, zero_divisor_graph

    a = catalog_ring(slug)
    b = make_quotient(4, poly)
    assert a.order == b.order
    assert a.is_local == b.is_local and a.is_reduced == b.is_reduced
    ann_profile = lambda r: sorted(len(r.annihilator(x)) for x in r.zero_divisors_nonzero)
    assert ann_profile(a) == ann_profile(b)
    ga, gb = zero_divisor_graph(a).graph, zero_divisor_graph(b).graph
    assert sorted(ga.degree_sequence()) == sorted(gb.degree_sequence())
    assert (tpc_pair_solver(zero_divisor_graph(a)) is None) == (
        tpc_pair_solver(zero_divisor_graph(b)) is None
    )


def test_spec_file_round_trip(tmp_path):
    spec = tables.load_catalog_spec("Z2XY-X2-Y2")
    path = tmp_path / "ring.json"
    import json

    path.write_text(json.dumps(spec.to_obj()))
    again = tables.load_spec_file(str(path))
    assert again == spec
    assert make_table_ring(again).order == 16
