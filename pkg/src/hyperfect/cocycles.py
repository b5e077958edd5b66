"""Cocycles of graphs, Seidel switching, purity, and the non-perfect
switching construction.

``co(G)`` is the 3-uniform hypergraph of vertex triples spanning an odd
number of edges of G.  It is invariant under Seidel switching, commutes
with complement and with induced subgraphs, and every 3-uniform hypergraph
in which all 4-sets span evenly many edges arises this way
(``is_cocycle`` reconstructs a representative).

``link_graph_plus(G, v)`` is the link of v inside co(G), described purely
in terms of G: edges are kept inside the neighborhood and inside the
non-neighborhood and complemented across.  A vertex v is *pure* when six
structural conditions hold: no odd hole or odd antihole of G sees v as a
center (complete to it) or anticenter (no edges to it), and no induced
subgraph containing v is a pre-odd-hole or pre-odd-antihole centered at v.
Purity of v is equivalent to link_graph_plus(G, v) being Berge; is_pure
runs the structural scan and the link route side by side and insists they
agree.

A pre-odd-hole centered at v is a decomposition of the other vertices into
an even cyclic arrangement of sectors, each inducing a path, with the
neighborhood of v equal to the union of the even-position sectors,
same-parity sectors non-adjacent, opposite-parity non-consecutive sectors
complete to each other, and consecutive sectors complete except for one
corner non-edge (both corners when there are only two sectors).  The
recognizer reconstructs the sectors from the graph and validates every
rule, then cross-checks the equivalent criterion: link_graph_plus(g, v)
is a single spanning odd cycle touching the neighborhood and the
non-neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .core import Graph, KHypergraph, cycle_graph, graph_of, require_graph
from .coloring import (
    Certificate,
    graph_colorable,
    is_graph_perfect,
    odd_holes,
)

__all__ = [
    "co",
    "cocycle_violation",
    "is_cocycle",
    "link_graph_plus",
    "seidel_switch",
    "PreOddHoleWitness",
    "recognize_pre_odd_hole",
    "recognize_pre_odd_antihole",
    "generate_pre_odd_hole",
    "is_pure_vertex",
    "is_pure",
    "mycielskian",
    "grotzsch_graph",
    "switching_counterexample",
    "switching_report",
]


# -- the cocycle map and its inverse ------------------------------------------


@lru_cache(maxsize=None)
def co(g: Graph) -> KHypergraph:
    """Triples of V(g) spanning an odd number of edges (1 or 3)."""
    require_graph(g)
    return KHypergraph.of(
        3,
        g.n,
        (
            t
            for t in combinations(range(g.n), 3)
            if (g.has_edge(t[:2]) + g.has_edge(t[::2]) + g.has_edge(t[1:])) % 2
        ),
    )


def cocycle_violation(h: KHypergraph) -> tuple[int, ...] | None:
    """First 4-set (colex order) spanning an odd number of edges, if any."""
    if h.k != 3:
        raise ValueError("cocycles are 3-uniform")
    for quad in sorted(combinations(range(h.n), 4), key=lambda q: q[::-1]):
        if sum(1 for t in combinations(quad, 3) if h.has_edge(t)) % 2:
            return quad
    return None


def is_cocycle(h: KHypergraph) -> Graph | None:
    """A graph G with co(G) = h, or None when h is not a cocycle.

    The representative is the switching-class member with vertex 0
    isolated: ab is an edge iff {0, a, b} is in h.  The round trip
    co(representative) = h is a theorem once all 4-sets span evenly, and
    is re-verified here.
    """
    if cocycle_violation(h) is not None:
        return None
    g = graph_of(
        h.n,
        (
            (a, b)
            for a, b in combinations(range(1, h.n), 2)
            if h.has_edge((0, a, b))
        ),
    )
    assert co(g) == h, "even 4-sets but the descendant does not reproduce h"
    return g


def link_graph_plus(g: Graph, v: int) -> Graph:
    """The link of v in co(g), on V(g) minus v (labels above v shift down).

    Stated on g directly: edges inside N(v) and inside the non-neighborhood
    are kept, pairs across are complemented.  The identity with the actual
    link of co(g) is asserted.
    """
    require_graph(g)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} outside range(0, {g.n})")
    nbrs = set(g.neighbors(v))
    others = [u for u in range(g.n) if u != v]
    edges = []
    for i, a in enumerate(others):
        for b in others[i + 1 :]:
            crossing = (a in nbrs) != (b in nbrs)
            if g.has_edge((a, b)) != crossing:
                edges.append((i, others.index(b, i + 1)))
    out = graph_of(g.n - 1, edges)
    assert out == co(g).link((v,)), "three-bullet rule disagrees with the link"
    return out


def seidel_switch(g: Graph, a) -> Graph:
    """Complement the pairs with exactly one endpoint in a; co is unchanged
    (each triple has zero or two crossing pairs)."""
    require_graph(g)
    aset = frozenset(a)
    if any(not (0 <= u < g.n) for u in aset):
        raise ValueError("switching set outside vertex range")
    edges = [
        (x, y)
        for x, y in combinations(range(g.n), 2)
        if g.has_edge((x, y)) != ((x in aset) != (y in aset))
    ]
    return graph_of(g.n, edges)


# -- pre-odd-holes --------------------------------------------------------------


@dataclass(frozen=True)
class PreOddHoleWitness:
    """Sector decomposition certifying a pre-odd-hole centered at a vertex.

    ``sectors[i]`` is the (i+1)-st sector, listed in its path order; odd
    positions (1-indexed) lie outside the neighborhood of the center, even
    positions inside.
    """

    center: int
    sectors: tuple[tuple[int, ...], ...]

    @property
    def sector_count(self) -> int:
        return len(self.sectors)

    def check(self, g: Graph) -> bool:
        return _sectors_valid(g, self.center, self.sectors)

    def to_jsonable(self) -> dict:
        return {"center": self.center, "sectors": [list(p) for p in self.sectors]}


def _adjacent(g: Graph, a: int, b: int) -> bool:
    return g.has_edge((min(a, b), max(a, b)))


def _sectors_valid(g: Graph, v: int, sectors) -> bool:
    """Literal check of every rule in the pre-odd-hole definition."""
    n = g.n
    if n < 6 or n % 2:
        return False
    k = len(sectors)
    if k < 2 or k % 2:
        return False
    if any(len(p) == 0 for p in sectors):
        return False
    flat = [u for p in sectors for u in p]
    if sorted(flat) != sorted(u for u in range(n) if u != v):
        return False
    if set(g.neighbors(v)) != {u for p in sectors[1::2] for u in p}:
        return False
    for p in sectors:
        for i, a in enumerate(p):
            for j in range(i + 1, len(p)):
                if _adjacent(g, a, p[j]) != (j == i + 1):
                    return False
    for i in range(k):
        for j in range(i + 1, k):
            pi, pj = sectors[i], sectors[j]
            pairs = {(a, b) for a in pi for b in pj}
            present = {p for p in pairs if _adjacent(g, *p)}
            if (j - i) % 2 == 0:
                if present:
                    return False
            elif k == 2:
                # both corner pairs are the non-edges
                if pairs - present != {(pi[-1], pj[0]), (pi[0], pj[-1])}:
                    return False
            elif j == i + 1:
                if pairs - present != {(pi[-1], pj[0])}:
                    return False
            elif i == 0 and j == k - 1:
                # cyclically consecutive, the corner runs from the last
                # sector into the first
                if pairs - present != {(pi[0], pj[-1])}:
                    return False
            else:
                if present != pairs:
                    return False
    return True


def _induced_path_order(g: Graph, comp: list[int]) -> list[int] | None:
    """comp as the vertex order of the path g induces on it, else None."""
    if len(comp) == 1:
        return list(comp)
    nbr = {
        u: [w for w in comp if w != u and _adjacent(g, u, w)] for u in comp
    }
    ends = [u for u in comp if len(nbr[u]) == 1]
    if len(ends) != 2 or any(len(nbr[u]) > 2 for u in comp):
        return None
    order = [min(ends)]
    prev = None
    while len(order) < len(comp):
        step = [w for w in nbr[order[-1]] if w != prev]
        if len(step) != 1:
            return None
        prev = order[-1]
        order.append(step[0])
    return order


def _components(g: Graph, verts) -> list[list[int]]:
    left = set(verts)
    out = []
    while left:
        seed = min(left)
        comp = {seed}
        frontier = [seed]
        while frontier:
            u = frontier.pop()
            for w in list(left - comp):
                if _adjacent(g, u, w):
                    comp.add(w)
                    frontier.append(w)
        out.append(sorted(comp))
        left -= comp
    return sorted(out)


def _spanning_odd_hole_criterion(g: Graph, v: int) -> bool:
    """link_graph_plus(g, v) is one spanning odd cycle meeting both sides."""
    if g.n < 6 or g.n % 2:
        return False
    if not g.neighbors(v) or len(g.neighbors(v)) == g.n - 1:
        return False
    plus = link_graph_plus(g, v)
    if any(len(plus.neighbors(u)) != 2 for u in range(plus.n)):
        return False
    return len(_components(plus, range(plus.n))) == 1


def _missing_cross_pairs(g: Graph, p: list[int], q: list[int]) -> list[tuple[int, int]]:
    return [(a, b) for a in p for b in q if not _adjacent(g, a, b)]


def _reconstruct_sectors(g: Graph, v: int) -> tuple[tuple[int, ...], ...] | None:
    nbrs = set(g.neighbors(v))
    rest = {u for u in range(g.n) if u != v}
    m_side, n_side = rest - nbrs, nbrs
    if not m_side or not n_side:
        return None
    m_comps = _components(g, m_side)
    n_comps = _components(g, n_side)
    if len(m_comps) != len(n_comps):
        return None
    comps = []
    for comp in m_comps + n_comps:
        path = _induced_path_order(g, comp)
        if path is None:
            return None
        comps.append(path)
    half = len(m_comps)
    k = 2 * half

    if k == 2:
        o, e = comps[0], comps[1]
        missing = set(_missing_cross_pairs(g, o, e))
        for op in (o, o[::-1]):
            for ep in (e, e[::-1]):
                if missing == {(op[-1], ep[0]), (op[0], ep[-1])}:
                    return (tuple(op), tuple(ep))
        return None

    # which sectors are cyclically consecutive: exactly one missing pair
    missing: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i in range(half):
        for j in range(half, k):
            gaps = _missing_cross_pairs(g, comps[i], comps[j])
            if len(gaps) > 1:
                return None
            if gaps:
                missing[(i, j)] = missing[(j, i)] = gaps
    consec = {i: [j for j in range(k) if (i, j) in missing] for i in range(k)}
    if any(len(c) != 2 for c in consec.values()):
        return None

    for start_dir in (0, 1):
        ring = [0, consec[0][start_dir]]
        while len(ring) < k:
            prev, cur = ring[-2], ring[-1]
            step = [j for j in consec[cur] if j != prev]
            if len(step) != 1:
                break
            ring.append(step[0])
        else:
            if ring[0] not in consec[ring[-1]]:
                continue
            # corner of each sector toward its successor pins the path
            # orientation: first = corner from the predecessor
            oriented: list[tuple[int, ...]] = []
            ok = True
            for pos, idx in enumerate(ring):
                succ = ring[(pos + 1) % k]
                pred = ring[(pos - 1) % k]
                (a_succ, b_succ) = missing[(idx, succ)][0]
                last = a_succ if a_succ in comps[idx] else b_succ
                (a_pred, b_pred) = missing[(pred, idx)][0]
                first = a_pred if a_pred in comps[idx] else b_pred
                path = comps[idx]
                if len(path) == 1:
                    if not (first == last == path[0]):
                        ok = False
                        break
                elif (path[0], path[-1]) == (first, last):
                    pass
                elif (path[0], path[-1]) == (last, first):
                    path = path[::-1]
                else:
                    ok = False
                    break
                oriented.append(tuple(path))
            if ok:
                return tuple(oriented)
    return None


def recognize_pre_odd_hole(g: Graph, v: int) -> PreOddHoleWitness | None:
    """Sector witness that (g, v) is a pre-odd-hole, or None.

    The reconstruction is structural (components of the two sides must be
    paths, consecutive sectors are read off the missing corner pairs) and
    the result is validated against every rule of the definition; the
    outcome is then cross-checked against the equivalent spanning-odd-hole
    criterion on link_graph_plus.
    """
    require_graph(g)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} outside range(0, {g.n})")
    witness = None
    if g.n >= 6 and g.n % 2 == 0:
        sectors = _reconstruct_sectors(g, v)
        if sectors is not None and _sectors_valid(g, v, sectors):
            witness = PreOddHoleWitness(v, sectors)
    criterion = _spanning_odd_hole_criterion(g, v)
    assert (witness is not None) == criterion, (
        "sector reconstruction disagrees with the spanning-hole criterion"
    )
    return witness


def recognize_pre_odd_antihole(g: Graph, v: int) -> PreOddHoleWitness | None:
    """Pre-odd-hole recognition on the complement; sectors are sectors of
    the complement graph."""
    return recognize_pre_odd_hole(g.complement(), v)


def generate_pre_odd_hole(sector_sizes) -> tuple[Graph, int]:
    """The pre-odd-hole with the given sector sizes, center first.

    Vertex 0 is the center; sectors occupy consecutive label blocks in
    path order.  Sizes must come in an even count >= 2 of positive parts
    with odd total >= 5 (so the graph has an even vertex count >= 6).
    """
    sizes = tuple(int(s) for s in sector_sizes)
    k = len(sizes)
    if k < 2 or k % 2:
        raise ValueError("sector count must be even and at least 2")
    if any(s < 1 for s in sizes):
        raise ValueError("sector sizes must be positive")
    total = sum(sizes)
    if total < 5 or total % 2 == 0:
        raise ValueError("total sector size must be odd and at least 5")
    sectors: list[list[int]] = []
    nxt = 1
    for s in sizes:
        sectors.append(list(range(nxt, nxt + s)))
        nxt += s
    edges = []
    for i, p in enumerate(sectors):
        if i % 2:  # even position, 1-indexed: inside the neighborhood
            edges.extend((0, u) for u in p)
        edges.extend((p[j], p[j + 1]) for j in range(len(p) - 1))
    for i in range(k):
        for j in range(i + 1, k):
            if (j - i) % 2 == 0:
                continue
            pi, pj = sectors[i], sectors[j]
            drop = set()
            if k == 2:
                drop = {(pi[-1], pj[0]), (pi[0], pj[-1])}
            elif j == i + 1:
                drop = {(pi[-1], pj[0])}
            elif i == 0 and j == k - 1:
                drop = {(pi[0], pj[-1])}
            edges.extend(
                (a, b) for a in pi for b in pj if (a, b) not in drop
            )
    return graph_of(1 + total, edges), 0


# -- purity -----------------------------------------------------------------------


def _center_kind(g: Graph, v: int, cycle: tuple[int, ...]) -> str | None:
    if v in cycle:
        return None
    hits = sum(1 for u in cycle if _adjacent(g, v, u))
    if hits == len(cycle):
        return "center"
    if hits == 0:
        return "anticenter"
    return None


def _pre_odd_failure(g: Graph, v: int, complemented: bool) -> dict | None:
    """An induced pre-odd-hole (of g, or of its complement) centered at v.

    Runs on the proof side: an odd hole of link_graph_plus meeting the
    neighborhood and the non-neighborhood marks the induced subgraph on
    the hole plus v, which the structural recognizer then certifies.
    """
    host = g.complement() if complemented else g
    plus = link_graph_plus(host, v)
    back = [u for u in range(host.n) if u != v]
    nbrs = set(host.neighbors(v))
    for hole in odd_holes(plus):
        inside = sum(1 for u in hole if back[u] in nbrs)
        if 0 < inside < len(hole):
            verts = tuple(sorted([v] + [back[u] for u in hole]))
            sub = host.induced(verts)
            witness = recognize_pre_odd_hole(sub, verts.index(v))
            assert witness is not None, "proof-side hole without sector structure"
            return {
                "kind": "pre_odd_antihole" if complemented else "pre_odd_hole",
                "vertices": verts,
                "center": v,
                "sectors": [
                    [verts[u] for u in sector] for sector in witness.sectors
                ],
            }
    return None


def _scan_failure(
    g: Graph,
    v: int,
    holes: list[tuple[int, ...]],
    antiholes: list[tuple[int, ...]],
) -> dict | None:
    """First of the six purity conditions that v violates, as a witness."""
    for cycle in holes:
        kind = _center_kind(g, v, cycle)
        if kind:
            return {"kind": f"hole_{kind}", "vertex": v, "cycle": cycle}
    for cycle in antiholes:
        kind = _center_kind(g, v, cycle)
        if kind:
            return {"kind": f"antihole_{kind}", "vertex": v, "cycle": cycle}
    for complemented in (False, True):
        found = _pre_odd_failure(g, v, complemented)
        if found:
            return found
    return None


def is_pure_vertex(g: Graph, v: int, method: str = "both") -> Certificate:
    """Purity of one vertex: the six structural conditions ("scan"), the
    Berge test on link_graph_plus ("link"), or both with agreement
    asserted."""
    require_graph(g)
    if method not in ("scan", "link", "both"):
        raise ValueError(f"unknown method {method!r}")
    scan_witness = link_witness = None
    if method in ("scan", "both"):
        holes = list(odd_holes(g))
        antiholes = list(odd_holes(g.complement()))
        scan_witness = _scan_failure(g, v, holes, antiholes)
    if method in ("link", "both"):
        cert = is_graph_perfect(link_graph_plus(g, v), method="hole_scan")
        if cert.verdict is False:
            link_witness = {"vertex": v, "link": cert.witness}
    if method == "both":
        assert (scan_witness is None) == (link_witness is None), (
            f"purity routes disagree at vertex {v}"
        )
    witness = scan_witness if scan_witness is not None else link_witness
    return Certificate.yes() if witness is None else Certificate.no(witness)


def is_pure(g: Graph, method: str = "both") -> Certificate:
    """Are all vertices pure?  Witness: the first impure vertex, with the
    violated condition."""
    require_graph(g)
    if method not in ("scan", "link", "both"):
        raise ValueError(f"unknown method {method!r}")
    holes = antiholes = None
    if method in ("scan", "both"):
        holes = list(odd_holes(g))
        antiholes = list(odd_holes(g.complement()))
    for v in range(g.n):
        scan_witness = link_witness = None
        if method in ("scan", "both"):
            scan_witness = _scan_failure(g, v, holes, antiholes)
        if method in ("link", "both"):
            cert = is_graph_perfect(link_graph_plus(g, v), method="hole_scan")
            if cert.verdict is False:
                link_witness = {"vertex": v, "link": cert.witness}
        if method == "both":
            assert (scan_witness is None) == (link_witness is None), (
                f"purity routes disagree at vertex {v}"
            )
        witness = scan_witness if scan_witness is not None else link_witness
        if witness is not None:
            return Certificate.no(witness)
    return Certificate.yes()


# -- the switching construction ------------------------------------------------------


def mycielskian(g: Graph) -> Graph:
    """Triangle-free-preserving construction raising the chromatic number
    by one: a shadow vertex per original, joined to the original
    neighborhoods, plus an apex over all shadows."""
    require_graph(g)
    n = g.n
    edges = [tuple(e) for e in g.edges]
    for a, b in g.edges:
        edges.append((a, b + n))
        edges.append((b, a + n))
    edges.extend((u + n, 2 * n) for u in range(n))
    return graph_of(2 * n + 1, edges)


def grotzsch_graph() -> Graph:
    """Smallest triangle-free graph of chromatic number 4."""
    return mycielskian(cycle_graph(5))


def switching_counterexample(h: Graph, a) -> Graph:
    """Attach a new vertex to A, then switch across (A, rest of the base).

    The base must be triangle free.  The defining property, that the link
    of the new vertex inside co of the result is the base graph again, is
    asserted before returning.
    """
    require_graph(h)
    aset = frozenset(a)
    if any(not (0 <= u < h.n) for u in aset):
        raise ValueError("switching set outside vertex range")
    for t in combinations(range(h.n), 3):
        if all(_adjacent(h, x, y) for x, y in combinations(t, 2)):
            raise ValueError(f"base graph has a triangle {t}")
    switched = seidel_switch(h, aset)
    edges = [tuple(e) for e in switched.edges]
    edges.extend((u, h.n) for u in sorted(aset))
    g = graph_of(h.n + 1, edges)
    assert co(g).link((h.n,)) == h, "link of the new vertex is not the base"
    return g


def switching_report(h: Graph, a) -> dict:
    """The construction plus its verification bundle.

    Always: the graph, the center, the link identity.  When the base
    provably needs more than 4 colors: the clique number of co (must be
    4), and the refutation of C_omega-perfectness — any proper 3-coloring
    of the pairs restricting properly at the center would properly
    3-color the link, which equals the base.  With a 4-colorable base no
    conclusion is drawn.
    """
    g = switching_counterexample(h, a)
    v = h.n
    out: dict = {
        "graph": g,
        "center": v,
        "link_identity": True,
        "chi_exceeds_4": graph_colorable(h, 4) is None,
    }
    if not out["chi_exceeds_4"]:
        out["c_omega"] = Certificate.unknown(
            "base graph is 4-colorable; the construction draws no conclusion"
        )
        return out
    omega = co(g).clique_number
    assert omega == 4, f"clique number of co is {omega}, expected 4"
    out["omega_co"] = omega
    assert graph_colorable(h, 3) is None  # a fortiori from chi > 4
    out["c_omega"] = Certificate.no(
        {
            "kind": "coloring_demand",
            "x": (v,),
            "t": omega - 1,
            "reason": "restricting at the center would 3-color the link, "
            "whose chromatic number exceeds 4",
        }
    )
    return out
