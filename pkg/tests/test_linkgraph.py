import math
from itertools import combinations

import pytest

from bhvkit import (
    KOutOfRange,
    Permutation,
    SearchBudgetExceeded,
    TooLarge,
    VertexNotFound,
    all_permutations,
    are_compatible,
    brute_force_automorphisms,
    build_link_graph,
    degree_formula,
    double_factorial,
    downward_neighbors,
    ekr_independent_sets,
    kneser_subgraph,
    link_report,
    make_split,
    make_topology,
    maximum_independent_sets,
    neighbors_of_size,
    permutation_to_automorphism,
    upward_neighbors,
    verify_degrees,
)


@pytest.fixture(scope="module")
def link5():
    return build_link_graph(5)


@pytest.fixture(scope="module")
def link6():
    return build_link_graph(6)


@pytest.fixture(scope="module")
def link7():
    return build_link_graph(7)


def test_link4_is_three_isolated_vertices():
    g = build_link_graph(4)
    assert g.vertex_count == 3
    assert g.edge_count == 0


def test_link5_is_petersen(link5):
    assert link5.vertex_count == 10
    assert link5.edge_count == 15
    assert all(link5.degree(i) == 3 for i in range(10))


def test_link6_vertex_count(link6):
    assert link6.vertex_count == 25


def test_link_graph_size_cap():
    with pytest.raises(TooLarge):
        build_link_graph(13)


def test_degree_formula_values():
    assert degree_formula(5, 2) == 3
    assert degree_formula(6, 2) == 10
    assert degree_formula(6, 3) == 6


def test_degree_formula_k_range():
    with pytest.raises(KOutOfRange):
        degree_formula(6, 1)
    with pytest.raises(KOutOfRange):
        degree_formula(6, 4)


def test_every_degree_matches_formula():
    for n in range(5, 10):
        g = build_link_graph(n)
        for i, v in enumerate(g.vertices):
            assert g.degree(i) == degree_formula(n, v.size)
        assert verify_degrees(g)


def test_vertex_set_partitions_by_size():
    for n in range(5, 10):
        g = build_link_graph(n)
        by_size = {}
        for v in g.vertices:
            by_size[v.size] = by_size.get(v.size, 0) + 1
        assert sum(by_size.values()) == g.vertex_count
        for k, count in by_size.items():
            if 2 * k < n:
                assert count == math.comb(n, k)
            else:
                assert count == math.comb(n, k) // 2


def test_kneser_subgraph_n5_is_whole_graph(link5):
    sub = kneser_subgraph(link5, 2)
    assert sub.vertex_count == 10
    assert sub.edge_count == 15


def test_kneser_subgraph_n6_k2(link6):
    sub = kneser_subgraph(link6, 2)
    assert sub.vertex_count == 15
    assert all(sub.degree(i) == 6 for i in range(15))


def test_half_size_layer_is_edgeless(link6):
    sub = kneser_subgraph(link6, 3)
    assert sub.vertex_count == 10
    assert sub.edge_count == 0


def test_kneser_edges_are_exactly_disjoint_pairs(link7):
    for k in (2, 3):
        sub = kneser_subgraph(link7, k)
        for i, j in combinations(range(sub.vertex_count), 2):
            disjoint = not (sub.vertices[i].mask & sub.vertices[j].mask)
            assert sub.adjacent(i, j) == disjoint


def test_kneser_k_range(link6):
    with pytest.raises(KOutOfRange):
        kneser_subgraph(link6, 1)
    with pytest.raises(KOutOfRange):
        kneser_subgraph(link6, 4)


def test_ekr_star_sets_n5(link5):
    stars = ekr_independent_sets(link5, 2)
    assert len(stars) == 5
    assert {s.side for s in stars[0]} == {(1, 2), (1, 3), (1, 4), (1, 5)}
    for star in stars:
        assert len(star) == 4


def test_ekr_star_sets_sizes_and_independence(link6, link7):
    for g, k in [(link6, 2), (link7, 2), (link7, 3)]:
        stars = ekr_independent_sets(g, k)
        assert len(stars) == g.n
        for star in stars:
            assert len(star) == math.comb(g.n - 1, k - 1)
            for a, b in combinations(sorted(star), 2):
                i, j = g.index_of(a), g.index_of(b)
                assert not g.adjacent(i, j)


def test_ekr_rejects_half_size(link6):
    with pytest.raises(KOutOfRange):
        ekr_independent_sets(link6, 3)


def test_maximum_independent_sets_petersen(link5):
    sub = kneser_subgraph(link5, 2)
    found = maximum_independent_sets(sub)
    assert len(found) == 5
    assert all(len(s) == 4 for s in found)
    assert set(found) == set(ekr_independent_sets(link5, 2))


def test_maximum_independent_sets_kneser62(link6):
    sub = kneser_subgraph(link6, 2)
    found = maximum_independent_sets(sub)
    assert len(found) == 6
    assert all(len(s) == 5 for s in found)
    assert set(found) == set(ekr_independent_sets(link6, 2))


def test_maximum_independent_sets_edgeless_layer(link6):
    sub = kneser_subgraph(link6, 3)
    found = maximum_independent_sets(sub)
    assert len(found) == 1
    assert len(found[0]) == 10


def test_maximum_independent_sets_vertex_cap(link7):
    sub = kneser_subgraph(link7, 3)  # 35 vertices
    with pytest.raises(TooLarge):
        maximum_independent_sets(sub)
    found = maximum_independent_sets(sub, max_vertices=40)
    assert len(found) == 7
    assert all(len(s) == 15 for s in found)
    assert set(found) == set(ekr_independent_sets(link7, 3))


def test_upward_neighbors_n6(link6):
    v = make_split({1, 2}, 6)
    up = upward_neighbors(link6, v)
    expected = {
        w
        for w in link6.vertices
        if w.size == 3 and are_compatible(v, w)
    }
    assert up == expected
    for w in up:
        assert v.mask & w.mask in (0, v.mask) or v.mask & w.complement_mask in (0, v.mask)


def test_upward_intersection_pins_unique_superset(link7):
    # {1,2,3} is the only size-3 split compatible with all its 2-subsets
    # and with every 2-subset of the complement
    target = make_split({1, 2, 3}, 7)
    sets = [upward_neighbors(link7, make_split(pair, 7)) for pair in combinations((1, 2, 3), 2)]
    sets += [upward_neighbors(link7, make_split(pair, 7)) for pair in combinations((4, 5, 6, 7), 2)]
    common = set.intersection(*sets)
    assert common == {target}


def test_downward_intersection_pins_unique_subset(link7):
    # {1,2} recovered from the size-3 splits extending it
    target = make_split({1, 2}, 7)
    sets = [downward_neighbors(link7, make_split({1, 2, a}, 7)) for a in (3, 4, 5, 6, 7)]
    assert set.intersection(*sets) == {target}


def test_downward_intersection_via_subset_size(link7):
    # {1,2,3}: the extending subsets {1,2,3,a} have size 4 > n/2, so their
    # canonical sides are the size-3 complements; query by target size
    # instead of canonical-size-minus-one.
    target = make_split({1, 2, 3}, 7)
    sets = [neighbors_of_size(link7, make_split({1, 2, 3, a}, 7), 3) for a in (4, 5, 6, 7)]
    assert set.intersection(*sets) == {target}


def test_neighbors_require_known_vertex(link5):
    with pytest.raises(VertexNotFound):
        upward_neighbors(link5, make_split({1, 2}, 6))


def test_automorphism_group_orders():
    assert brute_force_automorphisms(build_link_graph(4)).order == 6
    assert brute_force_automorphisms(build_link_graph(5)).order == 120
    assert brute_force_automorphisms(build_link_graph(6)).order == 720


def test_automorphisms_are_leaf_permutation_images(link5, link6):
    for g, n in [(link5, 5), (link6, 6)]:
        group = brute_force_automorphisms(g)
        images = {}
        for sigma in all_permutations(n):
            vp = permutation_to_automorphism(sigma, g)
            assert vp not in images  # injective homomorphism
            images[vp] = sigma
        assert set(group.elements) == set(images)


def test_no_nonidentity_automorphism_fixes_small_layer(link5, link6):
    for g in (link5, link6):
        layer = [i for i, v in enumerate(g.vertices) if v.size == 2]
        identity = tuple(range(g.vertex_count))
        for element in brute_force_automorphisms(g).elements:
            if element != identity:
                assert any(element[i] != i for i in layer)


def test_permutation_to_automorphism_transposition(link5):
    sigma = Permutation.from_cycles(5, (1, 2))
    vp = permutation_to_automorphism(sigma, link5)
    idx = {v: i for i, v in enumerate(link5.vertices)}
    assert vp[idx[make_split({1, 2}, 5)]] == idx[make_split({1, 2}, 5)]
    assert vp[idx[make_split({1, 3}, 5)]] == idx[make_split({2, 3}, 5)]
    assert vp[idx[make_split({2, 3}, 5)]] == idx[make_split({1, 3}, 5)]


def test_generators_generate_the_group(link5):
    group = brute_force_automorphisms(link5)
    from bhvkit.linkgraph import _closure

    assert len(_closure(list(group.generators), link5.vertex_count)) == group.order


def test_group_order_divides_vertex_factorial(link5):
    group = brute_force_automorphisms(link5)
    assert math.factorial(link5.vertex_count) % group.order == 0


def test_search_budget_cap(link6):
    with pytest.raises(SearchBudgetExceeded):
        brute_force_automorphisms(link6, node_cap=10)


def test_automorphism_vertex_cap():
    g8 = build_link_graph(8)  # 119 vertices
    with pytest.raises(TooLarge):
        brute_force_automorphisms(g8)


def test_binary_topologies_are_maximal_cliques(link5, link6):
    # (n-3)-cliques of the graph == binary topologies, counted by (2n-5)!!
    for g, n in [(link5, 5), (link6, 6)]:
        size = n - 3
        cliques = [
            c
            for c in combinations(range(g.vertex_count), size)
            if all(g.adjacent(i, j) for i, j in combinations(c, 2))
        ]
        assert len(cliques) == double_factorial(2 * n - 5)
        for c in cliques:
            make_topology({g.vertices[i] for i in c}, n)  # validates compatibility


def test_link_report_shape(link5):
    report = link_report(link5)
    assert report == {"n": 5, "vertices": 10, "edges": 15, "degrees_ok": True}


def test_dot_export(link5):
    dot = link5.to_dot()
    assert dot.startswith("graph link {")
    assert '"1,2" -- "3,4";' in dot
