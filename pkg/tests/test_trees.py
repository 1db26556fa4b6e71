import pytest

from zdcodes import trees
from zdcodes.graphs import make_complete, make_cycle, make_path
from zdcodes.tpc import is_total_perfect_code, tree_tpc
from zdcodes.trees import (
    BuildTrace,
    FamilyTraceFinding,
    StepPreconditionError,
    TreeBuildStep,
    all_trees_upto,
    apply_step,
    caterpillar_inner,
    caterpillar_outer,
    corona_family,
    generate_family_T,
    is_quasi_isolated,
    k_support_vertex,
    leaf_set,
    private_neighborhood,
    prufer_to_tree,
    random_family_T,
    reduction_probe,
    tree_canon,
)


def test_private_neighborhood_examples():
    p3 = make_path(3)
    assert private_neighborhood(p3, {1}, 1) == {0, 2}
    # members of the set are never private neighbours (closed convention)
    assert private_neighborhood(make_complete(3), {0, 1}, 0) == frozenset()
    g = make_path(4)
    assert private_neighborhood(g, {1, 2}, 2) == {3}
    assert private_neighborhood(g, {1, 2}, 1) == {0}
    # singleton subsets subtract nothing: pn(v, {v}) is the neighbourhood
    for v in range(g.n):
        assert private_neighborhood(g, {v}, v) == g.neighbor_sets[v]
    with pytest.raises(ValueError):
        private_neighborhood(p3, {0}, 1)


def test_private_neighborhood_matches_sole_neighbour_form_outside_s():
    # for u outside S the two published formulations coincide
    g = make_path(6)
    for s in ({1, 2}, {0, 3}, {2, 4, 5}):
        for v in s:
            pn = private_neighborhood(g, s, v)
            alt = {
                u
                for u in range(g.n)
                if u not in s and g.neighbor_sets[u] & s == {v}
            }
            assert pn == alt


def test_quasi_isolated():
    p4 = make_path(4)
    assert not is_quasi_isolated(p4, {1, 2}, 1)
    assert not is_quasi_isolated(p4, {1, 2}, 2)
    # vertex 3 is the sole private neighbour of 2
    assert is_quasi_isolated(p4, {1, 2}, 3)
    # code members of a bare edge have empty private neighbourhoods
    p2 = make_path(2)
    assert not is_quasi_isolated(p2, {0, 1}, 0)
    assert not is_quasi_isolated(p2, {0, 1}, 1)


def test_leaf_and_support():
    assert leaf_set(make_path(5)) == {0, 4}
    assert k_support_vertex(make_path(5), 0, 2) == 2
    assert k_support_vertex(make_path(5), 4, 1) == 3
    with pytest.raises(ValueError, match="eccentricity"):
        k_support_vertex(make_path(5), 0, 7)
    with pytest.raises(ValueError):
        leaf_set(make_cycle(4))


def test_apply_step_a2():
    t = make_path(4)
    grown = apply_step(t, {1, 2}, TreeBuildStep("A2", 1))
    assert grown.n == 5 and grown.is_tree()
    assert tree_tpc(grown) is not None


def test_apply_step_preconditions():
    t = make_path(4)
    code = {1, 2}
    with pytest.raises(StepPreconditionError, match="not in the supplied code"):
        apply_step(t, code, TreeBuildStep("A2", 0))
    with pytest.raises(StepPreconditionError, match="not a total perfect code"):
        apply_step(t, {0, 1}, TreeBuildStep("A2", 0))
    with pytest.raises(StepPreconditionError, match="at least 5"):
        apply_step(t, code, TreeBuildStep("A1", 1, 4))
    with pytest.raises(StepPreconditionError, match="2 mod 4"):
        apply_step(t, code, TreeBuildStep("A1", 1, 6))
    with pytest.raises(StepPreconditionError, match="odd"):
        apply_step(t, code, TreeBuildStep("A4", 1, 8, 2))
    with pytest.raises(StepPreconditionError, match="3 mod 8"):
        apply_step(t, code, TreeBuildStep("A4", 1, 11, 3))
    with pytest.raises(StepPreconditionError, match="support depth"):
        apply_step(t, code, TreeBuildStep("A4", 1, 7, 9))
    with pytest.raises(StepPreconditionError):
        TreeBuildStep("A9", 0)
    with pytest.raises(StepPreconditionError):
        TreeBuildStep("A1", 0)  # missing n


def test_family_traces():
    tr = generate_family_T(4, [])
    assert tr.graph.edges == make_path(4).edges
    assert tree_tpc(tr.graph) == {1, 2}

    tr = generate_family_T(2, [TreeBuildStep("A2", 0)])
    assert tr.graph.n == 3 and tree_tpc(tr.graph) is not None

    tr = generate_family_T(2, [TreeBuildStep("A1", 0, 8)])
    assert tr.graph.n == 10 and tree_tpc(tr.graph) is not None

    with pytest.raises(StepPreconditionError, match="1 mod 4"):
        generate_family_T(5, [])
    with pytest.raises(StepPreconditionError, match="no total perfect code"):
        generate_family_T(4, [TreeBuildStep("A2", 0)])  # v0 lies in no code of P4


def test_documented_congruence_failures_surface_as_findings():
    # the stated endpoint-attachment class n = 3 mod 4 never preserves codes;
    # the grow step accepts it (documented precondition) and verification
    # catches the loss
    with pytest.raises(FamilyTraceFinding) as exc:
        generate_family_T(4, [TreeBuildStep("A1", 1, 7)])
    assert exc.value.trace_obj["steps"] == [{"op": "A1", "v": 1, "n": 7}]
    # n = 1 mod 4 is also accepted and, despite the attached path having no
    # standalone code, the grown tree keeps one (the bridge covers the head)
    tr = generate_family_T(4, [TreeBuildStep("A1", 1, 5)])
    assert tree_tpc(tr.graph) is not None


def test_apply_step_preserves_treeness():
    t = make_path(4)
    for step in (TreeBuildStep("A2", 1), TreeBuildStep("A1", 1, 8), TreeBuildStep("A4", 1, 7, 3)):
        grown = apply_step(t, {1, 2}, step)
        assert grown.is_tree()


def test_random_family_deterministic():
    a = random_family_T(42, 40)
    b = random_family_T(42, 40)
    assert a.to_obj() == b.to_obj()
    assert a.graph.edges == b.graph.edges
    assert tree_tpc(a.graph) is not None


def test_trace_serialization_round_trip():
    tr = random_family_T(7, 30)
    obj = tr.to_obj()
    initial, steps = BuildTrace.obj_steps(obj)
    replay = generate_family_T(initial, steps)
    assert replay.graph.edges == tr.graph.edges


def test_corona_family():
    for cls, length in ((3, 3), (0, 4), (2, 6)):
        g = corona_family(cls, length)
        assert g.n == 2 * length
        assert tree_tpc(g) is None
    with pytest.raises(ValueError):
        corona_family(1, 5)
    with pytest.raises(ValueError):
        corona_family(3, 4)


def test_caterpillars():
    g, code = caterpillar_outer(0)
    assert g.n == 8 and code == {0, 1, 4, 5}
    assert is_total_perfect_code(g, code)
    g, code = caterpillar_outer(2)
    assert is_total_perfect_code(g, code)

    g, code = caterpillar_inner(1)
    assert g.n == 5 and code == {1, 2}
    g, code = caterpillar_inner(2)
    assert g.n == 11 and code == {1, 2, 5, 6}
    assert is_total_perfect_code(g, code)


def test_prufer_decode():
    g = prufer_to_tree([])
    assert g.edges == ((0, 1),)
    star = prufer_to_tree([0, 0])
    assert star.is_tree() and star.degree(0) == 3


def test_all_trees_counts_and_prufer_coverage():
    byn = all_trees_upto(7)
    assert [len(byn[n]) for n in range(1, 8)] == [1, 1, 1, 2, 3, 6, 11]
    # every labelled tree's canonical form appears in the generated list
    import itertools

    for n in range(2, 8):
        canon_set = {tree_canon(t) for t in byn[n]}
        seen = set()
        for seq in itertools.product(range(n), repeat=n - 2):
            seen.add(tree_canon(prufer_to_tree(list(seq))))
        assert seen == canon_set


def test_reduction_probe_clean_to_nine():
    checked, admitting, findings = reduction_probe(9)
    assert checked == 95 and admitting == 38
    assert findings == []
