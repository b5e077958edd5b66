"""Generators and extremal experiments: cones, unions, clique hypergraphs,
the balanced three-part construction, tripartite bounds, and the catalog of
intersecting families.

The edge-maximization question for well-behaved 3-uniform hypergraphs has
two reference points built here.  ``turan_construction`` is the balanced
three-part instance whose links are small perfect graphs; it has no
four-vertex clique and no four vertices spanning exactly one edge.
``complete_tripartite`` / ``tripartite_max_edges`` give the conjectured
ceiling for instances without a four-vertex clique.  ``extremal_search``
checks such statements extensionally: enumerate every isomorphism class at
a given size, filter by named predicates, and record the argmax.

The intersecting catalog (``intersecting_example``) carries the known
maximal families: the complete hypergraph on five vertices, triples
meeting a fixed 3-set twice, the cone over a balanced complete bipartite
graph, and the two four-special-vertex variants whose outside links are a
fixed triangle or a fixed star.  The first two variants and both link
variants have 3n-8 edges; the cone has floor((n-1)^2/4), overtaking the
others from n = 11 on.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core import (
    BudgetExceededError,
    KHypergraph,
    complete_bipartite_graph,
    complete_hypergraph,
    default_budget,
    iso_classes,
    ksubsets,
)
from .classifiers import (
    is_c_alpha_perfect,
    is_clique_friendly,
    is_doubly_perfect,
    is_h_alpha_perfect,
    is_h_omega_perfect,
    is_h_perfect,
)
from .coloring import is_berge, is_c_omega_perfect

__all__ = [
    "cone",
    "disjoint_union",
    "clique_hypergraph",
    "turan_construction",
    "tripartite_max_edges",
    "complete_tripartite",
    "intersecting_example",
    "is_intersecting",
    "is_simple",
    "random_simple_hypergraph",
    "PREDICATES",
    "ExtremalResult",
    "extremal_search",
]


# -- constructions ---------------------------------------------------------


def cone(h: KHypergraph) -> KHypergraph:
    """One new vertex (labeled n) added to every edge; (k+1)-uniform."""
    return KHypergraph.of(
        h.k + 1, h.n + 1, (e + (h.n,) for e in h.edge_list)
    )


def disjoint_union(g1: KHypergraph, g2: KHypergraph) -> KHypergraph:
    """Vertex-disjoint union; the second operand is shifted past the first."""
    if g1.k != g2.k:
        raise ValueError(f"uniformity mismatch: {g1.k} vs {g2.k}")
    shifted = (tuple(v + g1.n for v in e) for e in g2.edge_list)
    return KHypergraph.of(g1.k, g1.n + g2.n, list(g1.edge_list) + list(shifted))


def clique_hypergraph(g: KHypergraph, r: int) -> KHypergraph:
    """The r-uniform hypergraph of r-cliques of g; requires r > k."""
    if r <= g.k:
        raise ValueError(f"clique size {r} must exceed the uniformity {g.k}")
    return KHypergraph.of(
        r,
        g.n,
        (
            s
            for s in combinations(range(g.n), r)
            if all(g.has_edge(sub) for sub in combinations(s, g.k))
        ),
    )


def _three_parts(n: int) -> tuple[range, range, range]:
    s1 = (n + 2) // 3
    s2 = (n + 1) // 3
    return range(s1), range(s1, s1 + s2), range(s1 + s2, n)


def turan_construction(n: int) -> KHypergraph:
    """Balanced parts A, B, C; edges are the transversal triples plus the
    cyclically oriented pair types: two from A with one from B, two from B
    with one from C, two from C with one from A."""
    if n < 3:
        raise ValueError("need at least three vertices")
    a, b, c = _three_parts(n)
    edges = [(x, y, z) for x in a for y in b for z in c]
    for src, dst in ((a, b), (b, c), (c, a)):
        edges.extend(
            (p, q, w) for p, q in combinations(src, 2) for w in dst
        )
    return KHypergraph.of(3, n, edges)


def tripartite_max_edges(n: int) -> int:
    """max n1*n2*n3 over partitions of n; balanced parts attain it."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    return max(
        n1 * n2 * (n - n1 - n2)
        for n1 in range(n + 1)
        for n2 in range(n - n1 + 1)
    ) if n else 0


def complete_tripartite(n: int) -> KHypergraph:
    """All transversal triples of the balanced three-part split."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    a, b, c = _three_parts(n)
    return KHypergraph.of(3, n, ((x, y, z) for x in a for y in b for z in c))


def intersecting_example(kind: str, n: int) -> KHypergraph:
    """The cataloged intersecting families, with fixed vertex choices.

    a: the complete 3-uniform hypergraph, n <= 5 (two triples of five
       points always meet).
    b: special vertices {0, 1, 2}; edges are the triples containing at
       least two of them; 3n-8 edges.
    c: cone over the balanced complete bipartite graph on n-1 vertices
       (apex n-1); floor((n-1)^2/4) edges.
    link_triangle: specials {0, 1, 2, 3} spanning all four triples; every
       outside vertex is completed against the pairs of {0, 1, 2}; 3n-8.
    link_star: as above, but outside vertices are completed against the
       pairs {0, x} for x in {1, 2, 3}; 3n-8.
    """
    if kind == "a":
        if not 3 <= n <= 5:
            raise ValueError("the complete example is intersecting only up to five vertices")
        return complete_hypergraph(3, n)
    if kind == "b":
        if n < 3:
            raise ValueError("need the three special vertices")
        edges = [
            t
            for t in combinations(range(n), 3)
            if sum(1 for v in t if v < 3) >= 2
        ]
        return KHypergraph.of(3, n, edges)
    if kind == "c":
        if n < 3:
            raise ValueError("need an apex and both sides")
        return cone(complete_bipartite_graph((n - 1) // 2, n // 2))
    if kind in ("link_triangle", "link_star"):
        if n < 4:
            raise ValueError("need the four special vertices")
        edges = [t for t in combinations(range(4), 3)]
        base = (
            [(0, 1), (0, 2), (1, 2)]
            if kind == "link_triangle"
            else [(0, 1), (0, 2), (0, 3)]
        )
        edges.extend(
            tuple(sorted((v,) + p)) for v in range(4, n) for p in base
        )
        return KHypergraph.of(3, n, edges)
    raise ValueError(f"unknown kind {kind!r}")


def is_intersecting(g: KHypergraph) -> bool:
    """Every two edges share a vertex."""
    edges = g.edge_list
    return all(
        set(e) & set(f)
        for i, e in enumerate(edges)
        for f in edges[i + 1 :]
    )


def is_simple(g: KHypergraph) -> bool:
    """No two edges share more than k-2 vertices."""
    edges = g.edge_list
    return all(
        len(set(e) & set(f)) <= g.k - 2
        for i, e in enumerate(edges)
        for f in edges[i + 1 :]
    )


def random_simple_hypergraph(k: int, n: int, rng, max_edges: int | None = None) -> KHypergraph:
    """Greedy partial-Steiner-like instance: scan the k-subsets in random
    order, keeping each one that meets every kept edge in at most k-2
    vertices."""
    pool = list(ksubsets(n, k))
    rng.shuffle(pool)
    kept: list[tuple[int, ...]] = []
    for cand in pool:
        if max_edges is not None and len(kept) >= max_edges:
            break
        cset = set(cand)
        if all(len(cset & set(e)) <= k - 2 for e in kept):
            kept.append(cand)
    return KHypergraph.of(k, n, kept)


# -- extremal search --------------------------------------------------------


def _no_k4(g: KHypergraph) -> bool:
    return g.clique_number < 4


PREDICATES = {
    "berge": lambda g: is_berge(g).verdict is True,
    "c_omega": lambda g: is_c_omega_perfect(g).verdict is True,
    "c_alpha": lambda g: is_c_alpha_perfect(g).verdict is True,
    "doubly": lambda g: is_doubly_perfect(g).verdict is True,
    "h_perfect": lambda g: is_h_perfect(g).verdict is True,
    "h_omega": lambda g: is_h_omega_perfect(g).verdict is True,
    "h_alpha": lambda g: is_h_alpha_perfect(g).verdict is True,
    "clique_friendly": lambda g: is_clique_friendly(g).verdict is True,
    "intersecting": is_intersecting,
    "simple": is_simple,
    "k4_free": _no_k4,
}


@dataclass(frozen=True)
class ExtremalResult:
    max_edges: int
    instances: tuple[KHypergraph, ...]

    def to_jsonable(self) -> dict:
        return {
            "max_edges": self.max_edges,
            "instances": [g.canonical_id for g in self.instances],
        }


def extremal_search(
    n: int,
    predicates,
    k: int = 3,
    budget: int | None = None,
) -> ExtremalResult:
    """Maximum edge count over iso-reduced k-uniform hypergraphs on n
    vertices satisfying all named predicates, with every argmax instance.

    Predicate names index ``PREDICATES``.  The enumeration walks
    2^C(n, k) labeled instances; sizes past the budget raise instead of
    silently running forever.
    """
    checks = []
    for name in predicates:
        if name not in PREDICATES:
            raise ValueError(f"unknown predicate {name!r}")
        checks.append(PREDICATES[name])
    limit = default_budget() if budget is None else budget
    if n >= 0 and comb(n, k) > 0 and 2 ** comb(n, k) > limit:
        raise BudgetExceededError(
            f"enumeration of 2^{comb(n, k)} instances exceeds the budget {limit}"
        )
    best = -1
    argmax: list[KHypergraph] = []
    for g in iso_classes(k, n):
        if g.num_edges < best:
            continue
        if all(check(g) for check in checks):
            if g.num_edges > best:
                best = g.num_edges
                argmax = [g]
            else:
                argmax.append(g)
    return ExtremalResult(best, tuple(argmax))
