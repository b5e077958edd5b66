"""Generator and extremal-search tests.

Counts come from closed forms computed independently of the generators
(binomial expressions for the three-part construction, 3n-8 and
floor((n-1)^2/4) for the intersecting catalog, max n1*n2*n3 by brute
partition scan).  Search values at n=5 were frozen from an exhaustive
enumeration; the n=6 search lives in the acceptance suite.
"""

import random
from itertools import combinations
from math import comb

import pytest

from hyperfect.core import (
    complete_bipartite_graph,
    BudgetExceededError,
    KHypergraph,
    are_isomorphic,
    complete_graph,
    complete_hypergraph,
    cycle_graph,
    empty_hypergraph,
    graph_of,
    iso_classes,
    path_graph,
    petersen_graph,
)
from hyperfect.coloring import clear_caches
from hyperfect.classifiers import (
    is_h_alpha_perfect,
    is_h_omega_perfect,
    is_h_perfect,
)
from hyperfect.cocycles import co
from hyperfect.extremal import (
    PREDICATES,
    clique_hypergraph,
    complete_tripartite,
    cone,
    disjoint_union,
    extremal_search,
    intersecting_example,
    is_intersecting,
    is_simple,
    random_simple_hypergraph,
    tripartite_max_edges,
    turan_construction,
)


@pytest.fixture(autouse=True)
def _fresh_caches():
    clear_caches()
    yield


# -- cones, unions, clique hypergraphs ---------------------------------------


def test_cone_over_a_triangle_is_the_apex_star():
    c = cone(complete_graph(3))
    assert (c.k, c.n) == (3, 4)
    assert sorted(c.edge_list) == [(0, 1, 3), (0, 2, 3), (1, 2, 3)]


def test_cone_preserves_edge_count_and_emptiness():
    assert cone(empty_hypergraph(3, 5)).is_edgeless()
    g = petersen_graph()
    assert cone(g).num_edges == g.num_edges


def test_iterated_cones_over_bipartite_graphs_stay_h_omega_perfect():
    # each cone keeps the clique number one below the new uniformity, so
    # the construction can be iterated from any triangle-free perfect base
    for base in (path_graph(4), cycle_graph(6), complete_bipartite_graph(2, 3)):
        h = base
        for _ in range(3):
            h = cone(h)
            assert h.clique_number == h.k
            assert is_h_omega_perfect(h).verdict is True, (base.canonical_id, h.k)


def test_cone_over_a_base_with_a_large_clique_is_not_clique_friendly():
    # a triangle of the base plus the apex spans exactly three triples,
    # one short of complete, so preservation needs omega(base) <= k
    cert = is_h_omega_perfect(cone(complete_graph(4)))
    assert cert.verdict is False
    assert cert.witness["kind"] == "unfriendly_set"
    assert cert.witness["edges_spanned"] == 3


def test_cone_over_a_three_uniform_instance_with_small_omega():
    base = co(cycle_graph(5))
    assert base.clique_number == 3
    assert is_h_omega_perfect(cone(base)).verdict is True


def test_cone_over_an_imperfect_graph_is_not_h_perfect():
    c = cone(cycle_graph(5))
    cert = is_h_perfect(c)
    assert cert.verdict is False
    assert cert.witness["x"] == (5,)


def test_disjoint_union_shifts_the_second_summand():
    u = disjoint_union(complete_hypergraph(3, 4), complete_hypergraph(3, 4))
    assert (u.k, u.n, u.num_edges) == (3, 8, 8)
    assert u.clique_number == 4
    assert is_h_omega_perfect(u).verdict is True
    assert disjoint_union(u, empty_hypergraph(3, 3)).num_edges == u.num_edges


def test_disjoint_union_rejects_mixed_uniformity():
    with pytest.raises(ValueError):
        disjoint_union(complete_graph(3), complete_hypergraph(3, 4))


def test_clique_hypergraph_of_a_complete_graph():
    assert clique_hypergraph(complete_graph(5), 3) == complete_hypergraph(3, 5)
    assert clique_hypergraph(cycle_graph(5), 3).is_edgeless()
    with pytest.raises(ValueError):
        clique_hypergraph(complete_graph(5), 2)


def test_clique_hypergraphs_of_perfect_graphs_are_h_omega_perfect():
    rng = random.Random(23)
    checked = 0
    for g in iso_classes(2, 6):
        if PREDICATES["berge"](g) and rng.random() < 0.4:
            h = clique_hypergraph(g, 3)
            assert is_h_omega_perfect(h).verdict is True, g.canonical_id
            checked += 1
    assert checked >= 20


# -- the three-part construction -----------------------------------------------


def test_turan_counts_match_the_closed_form():
    for n in range(3, 13):
        s1, s2, s3 = (n + 2) // 3, (n + 1) // 3, n // 3
        want = s1 * s2 * s3 + comb(s1, 2) * s2 + comb(s2, 2) * s3 + comb(s3, 2) * s1
        assert turan_construction(n).num_edges == want
    assert turan_construction(6).num_edges == 14


def test_turan_is_k4_free_with_perfect_links():
    for n in range(3, 9):
        g = turan_construction(n)
        assert g.clique_number == 3
        assert is_h_perfect(g).verdict is True
        assert is_h_alpha_perfect(g).verdict is True


def test_turan_never_spans_exactly_one_edge_on_four_vertices():
    g = turan_construction(7)
    for quad in combinations(range(7), 4):
        spans = sum(1 for t in combinations(quad, 3) if g.has_edge(t))
        assert spans != 1


def test_turan_requires_three_vertices():
    with pytest.raises(ValueError):
        turan_construction(2)


def test_tripartite_maxima():
    assert [tripartite_max_edges(n) for n in range(9)] == [0, 0, 0, 1, 2, 4, 8, 12, 18]
    for n in range(3, 9):
        # the balanced split attains the brute-force partition maximum
        assert complete_tripartite(n).num_edges == tripartite_max_edges(n)


def test_complete_tripartite_is_h_omega_perfect_and_k4_free():
    g = complete_tripartite(6)
    assert g.num_edges == 8
    assert g.clique_number == 3
    assert is_h_omega_perfect(g).verdict is True


# -- intersecting catalog -----------------------------------------------------


def test_kind_a_is_the_complete_example():
    assert intersecting_example("a", 5) == complete_hypergraph(3, 5)
    assert is_intersecting(intersecting_example("a", 5))
    with pytest.raises(ValueError):
        intersecting_example("a", 6)


@pytest.mark.parametrize("kind", ["b", "link_triangle", "link_star"])
def test_three_n_minus_eight_families(kind):
    lo = 3 if kind == "b" else 4
    for n in range(lo, 13):
        h = intersecting_example(kind, n)
        assert h.num_edges == 3 * n - 8
        assert is_intersecting(h)


def test_kind_c_is_the_cone_over_balanced_bipartite():
    for n in range(3, 13):
        h = intersecting_example("c", n)
        assert h.num_edges == (n - 1) ** 2 // 4
        assert is_intersecting(h)
    # a star: every edge contains the apex
    apex = 10
    assert all(apex in e for e in intersecting_example("c", 11).edge_list)


def test_crossover_at_eleven():
    assert intersecting_example("b", 11).num_edges == 25
    assert intersecting_example("c", 11).num_edges == 25
    assert intersecting_example("c", 12).num_edges > intersecting_example("b", 12).num_edges
    assert intersecting_example("c", 10).num_edges < intersecting_example("b", 10).num_edges


def test_kind_b_is_h_omega_perfect_at_seven():
    h = intersecting_example("b", 7)
    assert h.num_edges == 13
    assert is_h_omega_perfect(h).verdict is True


def test_catalog_validates_input():
    with pytest.raises(ValueError):
        intersecting_example("b", 2)
    with pytest.raises(ValueError):
        intersecting_example("link_star", 3)
    with pytest.raises(ValueError):
        intersecting_example("z", 8)


# -- simple hypergraphs --------------------------------------------------------


def test_simplicity_predicate():
    assert is_simple(KHypergraph.of(3, 6, [(0, 1, 2), (0, 3, 4)]))
    assert not is_simple(KHypergraph.of(3, 6, [(0, 1, 2), (0, 1, 3)]))
    # for graphs the condition degenerates to being a matching
    assert is_simple(graph_of(4, [(0, 1), (2, 3)]))
    assert not is_simple(graph_of(3, [(0, 1), (0, 2)]))


def test_random_simple_instances_are_simple_and_h_omega_perfect():
    rng = random.Random(31)
    for _ in range(10):
        h = random_simple_hypergraph(3, 7, rng)
        assert is_simple(h)
        assert h.num_edges >= 1
        assert is_h_omega_perfect(h).verdict is True
    capped = random_simple_hypergraph(3, 7, random.Random(5), max_edges=2)
    assert capped.num_edges == 2


def test_random_simple_is_reproducible():
    a = random_simple_hypergraph(3, 8, random.Random(42))
    b = random_simple_hypergraph(3, 8, random.Random(42))
    assert a == b


# -- extremal search ------------------------------------------------------------


def test_search_without_predicates_finds_the_complete_hypergraph():
    r = extremal_search(5, [])
    assert r.max_edges == 10
    assert r.instances == (complete_hypergraph(3, 5).canonical_form(),)


def test_search_intersecting_h_omega_at_five():
    r = extremal_search(5, ["intersecting", "h_omega"])
    assert r.max_edges == 10
    assert len(r.instances) == 1
    assert are_isomorphic(r.instances[0], complete_hypergraph(3, 5))


def test_search_h_omega_k4_free_at_five_beats_tripartite():
    # the five-cycle cocycle spreads five edges with every four-set
    # spanning exactly two, one more than any three-part split allows
    r = extremal_search(5, ["h_omega", "k4_free"])
    assert r.max_edges == 5
    assert tripartite_max_edges(5) == 4
    assert len(r.instances) == 1
    assert are_isomorphic(r.instances[0], co(cycle_graph(5)))


def test_search_reports_shape():
    r = extremal_search(4, ["h_omega"])
    blob = r.to_jsonable()
    assert blob["max_edges"] == r.max_edges
    assert blob["instances"] == [g.canonical_id for g in r.instances]


def test_search_rejects_unknown_predicates_and_big_instances():
    with pytest.raises(ValueError):
        extremal_search(5, ["shiny"])
    with pytest.raises(BudgetExceededError):
        extremal_search(7, [])
    with pytest.raises(BudgetExceededError):
        extremal_search(6, [], budget=1000)
