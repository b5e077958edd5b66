"""Core object model: construction, operations, canonical form, enumeration.

Expected values here are either definitional brute-force recomputations done
inline (isomorphism by trying every permutation, clique number by scanning
vertex subsets) or counts frozen from published enumerations of small
hypergraphs.
"""

from itertools import combinations, permutations
from math import comb
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperfect.core import (
    BudgetExceededError,
    KHypergraph,
    KhgParseError,
    are_isomorphic,
    complete_bipartite_graph,
    complete_graph,
    complete_hypergraph,
    cycle_graph,
    default_budget,
    empty_graph,
    empty_hypergraph,
    enumerate_hypergraphs,
    graph_of,
    iso_classes,
    ksubset_ranks,
    ksubsets,
    parse_khg,
    path_graph,
    petersen_graph,
    random_hypergraph,
    to_khg,
)


def brute_iso(g: KHypergraph, h: KHypergraph) -> bool:
    """Isomorphism by exhausting all vertex permutations."""
    if (g.k, g.n, len(g.edges)) != (h.k, h.n, len(h.edges)):
        return False
    return any(
        frozenset(tuple(sorted(p[v] for v in e)) for e in g.edges) == h.edges
        for p in permutations(range(g.n))
    )


def brute_omega(g: KHypergraph) -> int:
    """Clique number by scanning all vertex subsets, smallest size first."""
    w = min(g.n, g.k - 1)
    for size in range(w + 1, g.n + 1):
        if any(
            all(tuple(c) in g.edges for c in combinations(s, g.k))
            for s in combinations(range(g.n), size)
        ):
            w = size
        else:
            break
    return w


# -- subset orders -----------------------------------------------------------


def test_ksubsets_colex_order():
    subs = ksubsets(5, 3)
    assert len(subs) == comb(5, 3)
    assert subs[0] == (0, 1, 2)
    assert subs[-1] == (2, 3, 4)
    # colex: reversed tuples increase lexicographically
    assert all(subs[i][::-1] < subs[i + 1][::-1] for i in range(len(subs) - 1))
    assert ksubset_ranks(5, 3) == {s: i for i, s in enumerate(subs)}


# -- construction and validation ----------------------------------------------


def test_of_normalizes_edge_order():
    g = KHypergraph.of(3, 5, [(4, 2, 0), (1, 3, 2)])
    assert g.edges == frozenset({(0, 2, 4), (1, 2, 3)})


@pytest.mark.parametrize(
    "k, n, edges",
    [
        (3, 4, [(0, 1)]),  # wrong arity
        (3, 4, [(0, 1, 1)]),  # repeated vertex
        (2, 3, [(0, 3)]),  # out of range
    ],
)
def test_of_rejects_bad_edges(k, n, edges):
    with pytest.raises(ValueError):
        KHypergraph.of(k, n, edges)


def test_of_rejects_duplicate_edges():
    with pytest.raises(ValueError, match="duplicate"):
        KHypergraph.of(2, 3, [(0, 1), (1, 0)])


def test_direct_constructor_demands_sorted_tuples():
    with pytest.raises(ValueError, match="strictly increasing"):
        KHypergraph(2, 3, frozenset({(1, 0)}))


def test_edge_mask_round_trip():
    g = KHypergraph.of(3, 5, [(0, 1, 2), (2, 3, 4), (0, 3, 4)])
    assert KHypergraph.from_edge_mask(3, 5, g.edge_mask) == g
    with pytest.raises(ValueError):
        KHypergraph.from_edge_mask(2, 3, 1 << 3)


def test_edge_list_is_colex_sorted():
    g = KHypergraph.of(2, 4, [(2, 3), (0, 1), (0, 3)])
    assert g.edge_list == ((0, 1), (0, 3), (2, 3))


def test_basic_views():
    g = KHypergraph.of(3, 4, [(0, 1, 2), (0, 1, 3)])
    assert g.num_edges == 2
    assert g.has_edge((2, 1, 0))
    assert not g.has_edge((1, 2, 3))
    assert g.degree(0) == 2 and g.degree(3) == 1
    assert not g.is_complete() and not g.is_edgeless()
    assert complete_hypergraph(3, 4).is_complete()
    assert empty_hypergraph(3, 4).is_edgeless()


# -- complement, induced, link -------------------------------------------------


def test_complement_is_involution():
    g = KHypergraph.of(3, 5, [(0, 1, 2), (1, 3, 4)])
    assert g.complement().complement() == g
    assert g.complement().num_edges == comb(5, 3) - 2


def test_induced_relabels_by_rank():
    g = KHypergraph.of(3, 6, [(1, 2, 4), (1, 2, 5), (0, 1, 2)])
    h = g.induced([1, 2, 4, 5])
    # 1->0, 2->1, 4->2, 5->3
    assert h.n == 4
    assert h.edges == frozenset({(0, 1, 2), (0, 1, 3)})
    with pytest.raises(ValueError):
        g.induced([0, 6])


def test_delete_is_induced_on_the_rest():
    g = petersen_graph()
    assert g.delete(3) == g.induced([v for v in range(10) if v != 3])


def test_link_semantics():
    g = KHypergraph.of(3, 5, [(0, 1, 2), (0, 2, 3), (1, 2, 3)])
    lk, back = g.link_with_map([2])
    assert back == (0, 1, 3, 4)
    # edges through 2, with 2 removed, relabeled: (0,1),(0,3),(1,3) -> (0,1),(0,2),(1,2)
    assert lk.k == 2 and lk.n == 4
    assert lk.edges == frozenset({(0, 1), (0, 2), (1, 2)})
    assert g.link([2]) == lk
    with pytest.raises(ValueError):
        g.link([0, 1, 2])


def test_adjacency_requires_graph():
    with pytest.raises(ValueError):
        KHypergraph.of(3, 4, [(0, 1, 2)]).adjacency
    g = cycle_graph(4)
    assert g.neighbors(0) == (1, 3)


# -- cliques -------------------------------------------------------------------


def test_clique_number_matches_brute_force_graphs():
    for n in range(6):
        for g in iso_classes(2, n):
            assert g.clique_number == brute_omega(g), g.edges


def test_clique_number_matches_brute_force_3_uniform():
    for g in enumerate_hypergraphs(3, 5):
        assert g.clique_number == brute_omega(g), g.edges


def test_max_clique_is_a_clique():
    g = petersen_graph()
    cl = g.max_clique()
    assert all(tuple(sorted(p)) in g.edges for p in combinations(cl, 2))


@pytest.mark.parametrize(
    "g, omega",
    [
        (cycle_graph(5), 2),
        (petersen_graph(), 2),
        (complete_graph(6), 6),
        (complete_bipartite_graph(3, 3), 2),
        (empty_graph(4), 1),
        (complete_hypergraph(3, 5), 5),
        (empty_hypergraph(3, 5), 2),  # any k-1 vertices form a clique
    ],
)
def test_clique_number_known_cases(g, omega):
    assert g.clique_number == omega


def test_independence_number_is_complement_clique():
    g = cycle_graph(7)
    assert g.independence_number == 3
    assert g.independence_number == g.complement().clique_number


# -- canonical form and isomorphism ---------------------------------------------


def test_canonical_key_characterizes_isomorphism_graphs_n4():
    gs = list(enumerate_hypergraphs(2, 4))
    for g in gs:
        for h in gs:
            assert (g.canonical_key == h.canonical_key) == brute_iso(g, h)


def test_canonical_key_characterizes_isomorphism_3_uniform_n5():
    gs = list(enumerate_hypergraphs(3, 5))
    rng = Random(7)
    for g in rng.sample(gs, 60):
        for h in rng.sample(gs, 20):
            assert (g.canonical_key == h.canonical_key) == brute_iso(g, h)


def test_canonical_form_is_stable():
    g = petersen_graph()
    cf = g.canonical_form()
    assert cf.canonical_key == g.canonical_key
    assert cf.canonical_form() == cf
    assert g.canonical_id == f"2u10:{g.canonical_key[2]:x}"


def test_relabeling_preserves_canonical_key():
    g = KHypergraph.of(3, 6, [(0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 5)])
    rng = Random(3)
    for _ in range(10):
        p = list(range(6))
        rng.shuffle(p)
        h = KHypergraph.of(3, 6, [tuple(p[v] for v in e) for e in g.edges])
        assert h.canonical_key == g.canonical_key
        assert are_isomorphic(g, h)


def test_are_isomorphic_negative():
    assert not are_isomorphic(cycle_graph(5), path_graph(5))
    assert not are_isomorphic(cycle_graph(5), cycle_graph(6))


# -- enumeration ------------------------------------------------------------------


# graphs on 0..7 vertices and small uniform hypergraphs, counts as published
ISO_COUNTS = {
    (2, 0): 1,
    (2, 1): 1,
    (2, 2): 2,
    (2, 3): 4,
    (2, 4): 11,
    (2, 5): 34,
    (2, 6): 156,
    (2, 7): 1044,
    (3, 3): 2,
    (3, 4): 5,
    (3, 5): 34,
    (4, 4): 2,
    (4, 5): 6,  # m-edge sets correspond to m-vertex sets via complement
    (4, 6): 156,
}


@pytest.mark.parametrize("k, n", sorted(ISO_COUNTS))
def test_iso_class_counts(k, n):
    assert len(iso_classes(k, n)) == ISO_COUNTS[(k, n)]


def test_iso_classes_3_uniform_n6_count():
    assert len(iso_classes(3, 6)) == 2136


def test_iso_classes_pairwise_non_isomorphic():
    cls = iso_classes(3, 4)
    assert all(
        not brute_iso(g, h) for i, g in enumerate(cls) for h in cls[i + 1 :]
    )


def test_labeled_enumeration_counts_and_order():
    gs = list(enumerate_hypergraphs(3, 4))
    assert len(gs) == 1 << comb(4, 3)
    assert [g.edge_mask for g in gs] == list(range(16))


def test_labeled_enumeration_budget():
    with pytest.raises(BudgetExceededError):
        list(enumerate_hypergraphs(2, 7, budget=1000))


def test_iso_reduce_flag_matches_iso_classes():
    assert tuple(enumerate_hypergraphs(2, 5, iso_reduce=True)) == iso_classes(2, 5)


def test_default_budget_env(monkeypatch):
    monkeypatch.delenv("HYPERFECT_BUDGET", raising=False)
    assert default_budget() == 2_000_000
    monkeypatch.setenv("HYPERFECT_BUDGET", "5000")
    assert default_budget() == 5000
    monkeypatch.setenv("HYPERFECT_BUDGET", "-2")
    with pytest.raises(ValueError):
        default_budget()
    monkeypatch.setenv("HYPERFECT_BUDGET", "many")
    with pytest.raises(ValueError):
        default_budget()


# -- named constructions ------------------------------------------------------------


def test_petersen_shape():
    g = petersen_graph()
    assert (g.n, g.num_edges) == (10, 15)
    assert all(g.degree(v) == 3 for v in range(10))
    assert g.independence_number == 4


def test_small_constructors():
    assert cycle_graph(5).num_edges == 5
    assert path_graph(1).num_edges == 0
    assert path_graph(4).num_edges == 3
    assert complete_bipartite_graph(2, 3).num_edges == 6
    assert graph_of(3, [(0, 1)]).edges == frozenset({(0, 1)})
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_random_hypergraph_seeded():
    a = random_hypergraph(3, 6, 0.4, Random(11))
    b = random_hypergraph(3, 6, 0.4, Random(11))
    assert a == b
    assert random_hypergraph(3, 6, 0.0, Random(1)).is_edgeless()
    assert random_hypergraph(3, 6, 1.0, Random(1)).is_complete()


# -- .khg text format -----------------------------------------------------------------


def test_khg_round_trip_corpus():
    for g in iso_classes(3, 5):
        assert parse_khg(to_khg(g)) == g


def test_khg_output_shape():
    g = KHypergraph.of(2, 4, [(2, 3), (0, 1)])
    assert to_khg(g) == "2 4\n0 1\n2 3\n"
    assert to_khg(g, comment="two\nlines").startswith("# two\n# lines\n2 4\n")


def test_khg_accepts_comments_and_blank_lines():
    g = parse_khg("# header comment\n\n3 4\n0 1 2\n\n# tail\n1 2 3\n")
    assert g == KHypergraph.of(3, 4, [(0, 1, 2), (1, 2, 3)])


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "missing"),
        ("3\n", "header"),
        ("2 x\n", "non-integer"),
        ("0 4\n", "out of range"),
        ("2 3\n0 1 2\n", "expected 2"),
        ("2 3\n0 5\n", "out of range"),
        ("2 3\n1 0\n", "strictly increasing"),
        ("2 3\n0 1\n0 1\n", "duplicate"),
    ],
)
def test_khg_parse_errors(text, fragment):
    with pytest.raises(KhgParseError, match=fragment):
        parse_khg(text)


def test_khg_error_reports_line_number():
    with pytest.raises(KhgParseError, match="line 3"):
        parse_khg("2 4\n0 1\n1 0\n")


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=3).flatmap(
        lambda k: st.tuples(
            st.just(k),
            st.integers(min_value=k, max_value=6),
        )
    ),
    st.data(),
)
def test_khg_round_trip_random(kn, data):
    k, n = kn
    mask = data.draw(st.integers(min_value=0, max_value=(1 << comb(n, k)) - 1))
    g = KHypergraph.from_edge_mask(k, n, mask)
    assert parse_khg(to_khg(g)) == g
