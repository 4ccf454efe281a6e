import pytest

from powerquotient.graphcore import (
    GraphMap,
    LabeledGraph,
    NotAHomomorphism,
    are_isomorphic,
    components,
    delete_vertex,
    induced_subgraph,
    is_complete_map,
    is_connected,
    is_homomorphism,
    is_locally_surjective,
    is_orbit_map,
    is_pseudo_covering,
    is_tame,
    is_two_connected,
    is_two_homomorphism,
    isolated_vertices,
    orbit_partition,
    quotient,
    read_graph,
    read_map,
    write_graph,
    write_map,
)
from powerquotient.permutations import Permutation, cyclic_class, fx_automorphism, perm_power

from conftest import sn_bundle


def path(k):
    return LabeledGraph(list("abcdefghij"[:k]), [(i, i + 1) for i in range(k - 1)])


def complete(k):
    return LabeledGraph(list(range(k)), [(i, j) for i in range(k) for j in range(i + 1, k)])


def star(leaves):
    return LabeledGraph(["c"] + [f"l{i}" for i in range(leaves)], [(0, i) for i in range(1, leaves + 1)])


def identity_map(g):
    return GraphMap(g, g, list(range(len(g))))


def test_graph_construction_errors():
    with pytest.raises(ValueError):
        LabeledGraph([])
    with pytest.raises(ValueError):
        LabeledGraph(["a", "b"], [(0, 0)])
    with pytest.raises(ValueError):
        LabeledGraph(["a", "b"], [(0, 2)])
    with pytest.raises(ValueError):
        LabeledGraph(["a", "a"]).index


def test_edges_are_symmetric_and_loops_implicit():
    g = LabeledGraph.from_label_edges(["a", "b", "c"], [("a", "b"), ("b", "a")])
    assert g.n_edges == 1
    assert g.has_edge("b", "a") and g.has_edge("c", "c") and not g.has_edge("a", "c")
    assert g.neighbors("a") == {"b"}


def test_components_examples():
    rep = components(LabeledGraph(list(range(5))))
    assert rep.count == 5 and all(c.is_complete and c.size == 1 for c in rep.components)
    rep = components(path(3))
    assert rep.count == 1 and not rep.components[0].is_complete
    assert components(complete(4)).components[0].is_complete


def test_components_order_and_census():
    g = LabeledGraph(["x", "y", "z", "w"], [(1, 3)], census=lambda s: s.upper())
    rep = components(g)
    assert [c.vertices for c in rep.components] == [(0,), (1, 3), (2,)]
    assert rep.components[1].census == {"Y": 1, "W": 1}
    assert rep.component_containing("w") is rep.components[1]
    assert rep.labels_of(rep.components[1]) == ["y", "w"]


def test_delete_vertex_examples():
    g = delete_vertex(star(3), "c")
    assert components(g).count == 3 and g.n_edges == 0
    h = delete_vertex(path(3), "a")
    assert len(h) == 2 and h.n_edges == 1
    with pytest.raises(KeyError):
        delete_vertex(path(3), "z")
    with pytest.raises(ValueError):
        delete_vertex(LabeledGraph(["a"]), "a")


def test_delete_identity_from_power_graph_of_c4():
    x = Permutation.parse("(1 2 3 4)")
    elems = [perm_power(x, k) for k in range(4)]
    powers = {e: {perm_power(e, k) for k in range(1, 5)} for e in elems}
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4)
             if elems[j] in powers[elems[i]] or elems[i] in powers[elems[j]]]
    g = LabeledGraph(elems, edges)
    assert components(delete_vertex(g, elems[0])).count == 1


def test_quotient_examples():
    g = path(4)
    q, pi = quotient(g, [[lab] for lab in g.labels])
    assert are_isomorphic(q, g)
    q, pi = quotient(g, [g.labels])
    assert len(q) == 1 and q.n_edges == 0
    q, pi = quotient(g, [["a", "b"], ["c"], ["d"]])
    assert q.n_edges == 2 and pi("b") == frozenset({"a", "b"})
    with pytest.raises(ValueError):
        quotient(g, [["a", "b"], ["b", "c", "d"]])
    with pytest.raises(ValueError):
        quotient(g, [["a", "b"], ["c"]])
    with pytest.raises(ValueError):
        quotient(g, [["a", "b", "c", "d"], []])


def test_generic_quotient_of_s4_power_graph():
    b = sn_bundle(4)
    classes = [c.members() for c in b.quotient.labels]
    q, pi = quotient(b.explicit, classes)
    # 6 + 4 + 3 + 3 classes of types [1,1,2], [1,3], [2,2], [4]
    assert len(q) == 16
    assert components(q).count == 13
    assert is_tame(pi) and is_complete_map(pi)


def test_hom_examples():
    g = path(3)
    assert is_homomorphism(identity_map(g)) and is_two_homomorphism(identity_map(g))
    const = GraphMap(g, LabeledGraph(["*"]), [0, 0, 0])
    assert is_homomorphism(const) and not is_two_homomorphism(const)
    # an edge onto two non-adjacent vertices
    assert not is_homomorphism(GraphMap(path(3), LabeledGraph(["p", "q"]), [0, 1, 0]))
    assert not is_homomorphism(GraphMap(complete(3), LabeledGraph(["p", "q", "r"], [(0, 1)]), [0, 1, 2]))


def test_map_construction():
    g = path(3)
    with pytest.raises(ValueError):
        GraphMap(g, g, [0, 1])
    with pytest.raises(ValueError):
        GraphMap(g, g, [0, 1, 5])
    m = GraphMap.from_function(g, g, lambda s: "b")
    assert m.fibers() == [[], [0, 1, 2], []]
    assert m("a") == "b"
    two = identity_map(g).compose(m)
    assert two.assignment == (1, 1, 1)
    with pytest.raises(ValueError):
        m.compose(identity_map(path(3)))


def test_identity_map_has_every_property():
    for g in [path(4), complete(3), star(3), LabeledGraph(list(range(3)))]:
        m = identity_map(g)
        assert is_complete_map(m) and is_tame(m)
        assert is_locally_surjective(m) and is_pseudo_covering(m)


def test_checkers_reject_non_homomorphisms():
    m = GraphMap(complete(3), LabeledGraph(["p", "q", "r"], [(0, 1)]), [0, 1, 2])
    for check in (is_complete_map, is_tame, is_locally_surjective, is_pseudo_covering):
        with pytest.raises(NotAHomomorphism):
            check(m)


def test_fold_of_path():
    # a-b-c onto p-q folding a and c together
    m = GraphMap(path(3), LabeledGraph(["p", "q"], [(0, 1)]), [0, 1, 0])
    assert is_complete_map(m) and is_tame(m) and is_locally_surjective(m)
    # two disjoint edges onto one edge: complete but not tame
    two = LabeledGraph(list("abcd"), [(0, 1), (2, 3)])
    m = GraphMap(two, LabeledGraph(["p", "q"], [(0, 1)]), [0, 1, 0, 1])
    assert is_complete_map(m) and not is_tame(m)
    # an edge into a path: not onto
    m = GraphMap(path(2), path(3), [0, 1])
    assert not is_complete_map(m) and not is_locally_surjective(m)


def test_orbit_examples():
    g = path(3)
    assert is_orbit_map(identity_map(g), [])
    flip = [2, 1, 0]
    assert orbit_partition(g, [flip]) == [0, 1, 0]
    fold = GraphMap(g, LabeledGraph(["p", "q"], [(0, 1)]), [0, 1, 0])
    assert is_orbit_map(fold, [flip])
    assert is_orbit_map(fold, [{"a": "c", "b": "b", "c": "a"}])
    assert not is_orbit_map(fold, [])
    with pytest.raises(ValueError):
        orbit_partition(g, [[1, 0, 2]])
    with pytest.raises(ValueError):
        orbit_partition(g, [[0, 1]])


def test_type_map_needs_enough_generators():
    b = sn_bundle(4)
    e = fx_automorphism(Permutation.identity(4), b.quotient.labels)
    assert not is_orbit_map(b.t_map, [e])
    gens = [fx_automorphism(Permutation.parse(s, 4), b.quotient.labels) for s in ("(1 2)", "(1 2 3 4)")]
    assert is_orbit_map(b.t_map, gens)


def test_isolated_vertices():
    g = LabeledGraph(list(range(4)))
    assert isolated_vertices(g) == {0, 1, 2, 3}
    assert isolated_vertices(complete(2)) == set()
    assert isolated_vertices(LabeledGraph(list("abc"), [(0, 1)])) == {"c"}


def test_s5_isolated_classes_are_the_five_cycles():
    iso = isolated_vertices(sn_bundle(5).quotient)
    assert len(iso) == 6
    assert {c.cycle_type for c in iso} == {cyclic_class(Permutation.parse("(1 2 3 4 5)")).cycle_type}


def test_two_connected():
    assert is_two_connected(complete(3))
    assert is_two_connected(complete(2))
    assert not is_two_connected(LabeledGraph(["a"]))
    assert not is_two_connected(path(3))
    assert not is_two_connected(LabeledGraph(list("ab")))
    cycle = LabeledGraph(list(range(5)), [(i, (i + 1) % 5) for i in range(5)])
    assert is_two_connected(cycle)
    bowtie = LabeledGraph(list(range(5)), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert not is_two_connected(bowtie)


def brute_two_connected(g):
    if len(g) == 1 or not is_connected(g):
        return False
    return all(is_connected(delete_vertex(g, lab)) for lab in g.labels)


def test_two_connected_matches_definition():
    import random
    rng = random.Random(4)
    for _ in range(300):
        k = rng.randint(1, 8)
        edges = [(i, j) for i in range(k) for j in range(i + 1, k) if rng.random() < 0.4]
        g = LabeledGraph(list(range(k)), edges)
        assert is_two_connected(g) == brute_two_connected(g)


def test_isomorphism():
    assert are_isomorphic(path(4), LabeledGraph(list("wxyz"), [(0, 2), (2, 1), (1, 3)]))
    assert not are_isomorphic(path(4), star(3))
    assert not are_isomorphic(path(3), path(4))
    c6 = LabeledGraph(list(range(6)), [(i, (i + 1) % 6) for i in range(6)])
    two_triangles = LabeledGraph(list(range(6)), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not are_isomorphic(c6, two_triangles)


def test_induced_subgraph():
    g = complete(4)
    h = induced_subgraph(g, [1, 3])
    assert h.labels == [1, 3] and h.n_edges == 1


def test_graph_and_map_round_trip():
    g = LabeledGraph(["(1 2)", "(1 2 3)", "x"], [(0, 1)])
    text = write_graph(g)
    assert text.splitlines()[:2] == ["vertices 3", "edges 1"]
    h = read_graph(text)
    assert h.labels == g.labels and sorted(h.edges()) == sorted(g.edges())
    m = GraphMap(g, h, [1, 1, 2])
    assert read_map(write_map(m), g, h).assignment == m.assignment


@pytest.mark.parametrize("text", [
    "", "vertices 2\n", "vertices 2\nedges 1\na\nb\n", "vertices 2\nedges 1\na\nb\n0 1 2\n",
    "vertices 2\nedges 1\na\nb\n0 5\n", "vertices 1\nedges 0\na\nextra\n",
])
def test_read_graph_rejects(text):
    with pytest.raises(ValueError):
        read_graph(text)


@pytest.mark.parametrize("text", ["0 -> 0\n", "0 -> 0\n0 -> 1\n1 -> 0\n", "0 => 1\n1 -> 0\n", "0 -> 0\n1 -> 9\n"])
def test_read_map_rejects(text):
    g = path(2)
    with pytest.raises(ValueError):
        read_map(text, g, g)


@pytest.mark.parametrize("n", range(3, 7))
def test_two_homs_pull_back_isolation(n):
    b = sn_bundle(n)
    for m in (b.t_map, b.o_map, b.oT_map):
        assert is_two_homomorphism(m)
        iso = {m.target.index[lab] for lab in isolated_vertices(m.target)}
        for v, t in enumerate(m.assignment):
            if t in iso:
                assert not m.source.adj[v]


@pytest.mark.parametrize("n", range(3, 7))
def test_pseudo_coverings_map_components_onto_components(n):
    b = sn_bundle(n)
    for m in (b.pi, b.t_map):
        assert is_pseudo_covering(m)
        trep = components(m.target)
        for comp in components(m.source).components:
            image = {m.assignment[v] for v in comp.vertices}
            target_comp = trep.components[trep.component_of[next(iter(image))]]
            assert image == set(target_comp.vertices)


@pytest.mark.parametrize("n", range(3, 8))
def test_quotient_components_match_merged_explicit_components(n):
    b = sn_bundle(n)
    erep = b.explicit_components
    merged = {frozenset(b.pi.assignment[v] for v in c.vertices) for c in erep.components}
    assert merged == {frozenset(c.vertices) for c in b.quotient_components.components}
