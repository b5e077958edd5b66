"""Exact combinatorics of k-uniform hypergraphs on small vertex sets.

The central type is :class:`KHypergraph`, an immutable k-uniform hypergraph
on vertices 0..n-1.  Everything downstream (tuple colorings, perfectness
classifiers, cocycle machinery, extremal searches) works over this type,
so this module keeps the primitives exact and deterministic: complement,
induced subhypergraph, link of a vertex subset, clique number, canonical
form under relabeling, systematic enumeration, and a plain text format.

Edge sets live in two synchronized representations: a frozenset of sorted
vertex tuples (convenient to iterate and hash) and, lazily, an integer
bitset indexed by the colex rank of each k-subset (convenient for
enumeration, deduplication and canonicalization).

Graphs are the k = 2 case throughout; ``Graph`` is an alias, not a subclass.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

__all__ = [
    "KHypergraph",
    "Graph",
    "BudgetExceededError",
    "KhgParseError",
    "ksubsets",
    "ksubset_ranks",
    "default_budget",
    "enumerate_hypergraphs",
    "iso_classes",
    "are_isomorphic",
    "parse_khg",
    "to_khg",
    "complete_hypergraph",
    "empty_hypergraph",
    "complete_graph",
    "empty_graph",
    "cycle_graph",
    "path_graph",
    "complete_bipartite_graph",
    "petersen_graph",
    "graph_of",
    "random_hypergraph",
]


# Enumeration and search guards.  The environment variable gives a global
# default so the CLI and library agree on what "desk scale" means.
DEFAULT_BUDGET = 2_000_000
_BUDGET_ENV = "HYPERFECT_BUDGET"


class BudgetExceededError(RuntimeError):
    """An enumeration or search exceeded its step budget.

    Raised instead of silently truncating: a partial scan must never be
    reported as an exhaustive one.
    """


class KhgParseError(ValueError):
    """Malformed .khg input."""


def default_budget() -> int:
    raw = os.environ.get(_BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_BUDGET_ENV} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{_BUDGET_ENV} must be positive, got {value}")
    return value


@lru_cache(maxsize=None)
def ksubsets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All k-subsets of range(n) as sorted tuples, in colex order."""
    return tuple(sorted(combinations(range(n), k), key=lambda s: s[::-1]))


@lru_cache(maxsize=None)
def ksubset_ranks(n: int, k: int) -> dict[tuple[int, ...], int]:
    """Colex rank of every k-subset of range(n)."""
    return {s: i for i, s in enumerate(ksubsets(n, k))}


def _normalize_edges(k: int, edges: Iterable[Iterable[int]]) -> frozenset[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for e in edges:
        t = tuple(sorted(e))
        if len(t) != k or len(set(t)) != k:
            raise ValueError(f"edge {tuple(e)!r} is not a {k}-subset")
        out.append(t)
    norm = frozenset(out)
    if len(norm) != len(out):
        raise ValueError("duplicate edges")
    return norm


@dataclass(frozen=True)
class KHypergraph:
    """Immutable k-uniform hypergraph on vertex set {0, ..., n-1}.

    ``edges`` must be a frozenset of strictly increasing k-tuples; use
    :meth:`of` to build one from unnormalized input.
    """

    k: int
    n: int
    edges: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"uniformity must be at least 1, got {self.k}")
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        for e in self.edges:
            if len(e) != self.k:
                raise ValueError(f"edge {e!r} has arity {len(e)}, expected {self.k}")
            if any(not (0 <= v < self.n) for v in e):
                raise ValueError(f"edge {e!r} has a vertex outside range(0, {self.n})")
            if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                raise ValueError(f"edge {e!r} is not strictly increasing")

    @classmethod
    def of(cls, k: int, n: int, edges: Iterable[Iterable[int]]) -> "KHypergraph":
        """Build a hypergraph, sorting each edge and rejecting duplicates."""
        return cls(k, n, _normalize_edges(k, edges))

    @classmethod
    def from_edge_mask(cls, k: int, n: int, mask: int) -> "KHypergraph":
        """Inverse of :attr:`edge_mask`: bit i set means the i-th colex k-subset is an edge."""
        subs = ksubsets(n, k)
        if mask < 0 or mask >> len(subs):
            raise ValueError("edge mask out of range")
        return cls(k, n, frozenset(s for i, s in enumerate(subs) if mask >> i & 1))

    # -- basic views ----------------------------------------------------

    @cached_property
    def edge_list(self) -> tuple[tuple[int, ...], ...]:
        """Edges in colex order (the serialization and iteration order)."""
        return tuple(sorted(self.edges, key=lambda s: s[::-1]))

    @cached_property
    def edge_mask(self) -> int:
        rank = ksubset_ranks(self.n, self.k)
        return reduce(lambda acc, e: acc | 1 << rank[e], self.edges, 0)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self.edges

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_complete(self) -> bool:
        return len(self.edges) == comb(self.n, self.k)

    def is_edgeless(self) -> bool:
        return not self.edges

    # -- adjacency for graphs -------------------------------------------

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighborhood bitmasks; only meaningful for k = 2."""
        if self.k != 2:
            raise ValueError("adjacency masks are defined for graphs (k = 2)")
        rows = [0] * self.n
        for a, b in self.edges:
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return tuple(rows)

    def neighbors(self, v: int) -> tuple[int, ...]:
        row = self.adjacency[v]
        return tuple(u for u in range(self.n) if row >> u & 1)

    # -- algebraic operations -------------------------------------------

    def complement(self) -> "KHypergraph":
        """Same vertices; a k-subset is an edge iff it was not one before."""
        all_subs = ksubsets(self.n, self.k)
        return KHypergraph(self.k, self.n, frozenset(s for s in all_subs if s not in self.edges))

    def induced(self, vertices: Iterable[int]) -> "KHypergraph":
        """Subhypergraph induced on ``vertices``, relabeled by rank."""
        vs = sorted(set(vertices))
        if any(not (0 <= v < self.n) for v in vs):
            raise ValueError("induced set contains a vertex outside the hypergraph")
        pos = {v: i for i, v in enumerate(vs)}
        keep = set(vs)
        edges = frozenset(
            tuple(pos[v] for v in e) for e in self.edges if keep.issuperset(e)
        )
        return KHypergraph(self.k, len(vs), edges)

    def delete(self, v: int) -> "KHypergraph":
        return self.induced(u for u in range(self.n) if u != v)

    def link_with_map(self, x: Iterable[int]) -> tuple["KHypergraph", tuple[int, ...]]:
        """Link of the set X plus the new-to-old vertex map.

        The link keeps every edge containing X, drops X from it, and lives on
        V minus X (relabeled by rank).  Its uniformity is k - |X|.
        """
        xs = tuple(sorted(set(x)))
        if any(not (0 <= v < self.n) for v in xs):
            raise ValueError("link set contains a vertex outside the hypergraph")
        if len(xs) >= self.k:
            raise ValueError(f"link set of size {len(xs)} needs size < k = {self.k}")
        rest = tuple(v for v in range(self.n) if v not in xs)
        pos = {v: i for i, v in enumerate(rest)}
        xset = set(xs)
        edges = frozenset(
            tuple(pos[v] for v in e if v not in xset)
            for e in self.edges
            if xset.issubset(e)
        )
        return KHypergraph(self.k - len(xs), len(rest), edges), rest

    def link(self, x: Iterable[int]) -> "KHypergraph":
        return self.link_with_map(x)[0]

    # -- cliques ----------------------------------------------------------

    def max_clique(self) -> tuple[int, ...]:
        """One maximum clique (every k-subset of it is an edge).

        Any vertex set of size below k is a clique by convention, so the
        result always has at least min(n, k - 1) vertices.
        """
        n, k, edges = self.n, self.k, self.edges
        best: list[int] = list(range(min(n, k - 1)))
        stack: list[int] = []

        def extend(cand: list[int]) -> None:
            nonlocal best
            if len(stack) > len(best):
                best = stack.copy()
            for i, v in enumerate(cand):
                if len(stack) + len(cand) - i <= len(best):
                    return
                if len(stack) >= k - 2:
                    nxt = [
                        u
                        for u in cand[i + 1 :]
                        if all(
                            tuple(sorted(t + (v, u))) in edges
                            for t in combinations(stack, k - 2)
                        )
                    ]
                else:
                    nxt = cand[i + 1 :]
                stack.append(v)
                extend(nxt)
                stack.pop()

        extend(list(range(n)))
        return tuple(best)

    @cached_property
    def clique_number(self) -> int:
        return len(self.max_clique())

    @cached_property
    def independence_number(self) -> int:
        """Clique number of the complement: largest set spanning no edge."""
        return self.complement().clique_number

    # -- canonical form ---------------------------------------------------

    @cached_property
    def _incidences(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        incident: list[list[tuple[int, ...]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            for v in e:
                incident[v].append(e)
        return tuple(tuple(rows) for rows in incident)

    def _refine_colors(self, colors: list[int]) -> list[int]:
        """Stable point of the edge-profile refinement, starting from ``colors``.

        The signature of a vertex is its color plus the multiset of neighbor
        color profiles over its incident edges; both are label-invariant, so
        isomorphic hypergraphs refine identically.
        """
        incident = self._incidences
        n = self.n
        for _ in range(n):
            sigs = []
            for v in range(n):
                profile = sorted(
                    tuple(sorted(colors[u] for u in e if u != v)) for e in incident[v]
                )
                sigs.append((colors[v], tuple(profile)))
            palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
            refined = [palette[s] for s in sigs]
            if refined == colors:
                break
            colors = refined
        return colors

    @cached_property
    def _vertex_classes(self) -> tuple[tuple[int, ...], ...]:
        """Vertex partition under iterated label-invariant refinement.

        Classes are ordered by their invariant, so the partition (and its
        order) is identical for isomorphic hypergraphs.
        """
        colors = self._refine_colors([self.degree(v) for v in range(self.n)])
        classes: dict[int, list[int]] = {}
        for v in range(self.n):
            classes.setdefault(colors[v], []).append(v)
        return tuple(tuple(classes[c]) for c in sorted(classes))

    @cached_property
    def canonical_key(self) -> tuple[int, int, int]:
        """(k, n, bits): isomorphism-invariant edge bitset of a relabeled copy.

        Individualization-refinement: whenever refinement leaves a class with
        several vertices, each member in turn is marked apart, the partition
        is re-refined, and the minimum over the branches is kept.  The branch
        tree depends only on the isomorphism type, so equal keys characterize
        isomorphism; the value is always the edge bitset of an actual
        relabeling of the hypergraph.
        """
        n, k = self.n, self.k
        if not self.edges:
            return (k, n, 0)
        if self.is_complete():
            return (k, n, (1 << comb(n, k)) - 1)
        rank = ksubset_ranks(n, k)
        edges = self.edge_list
        budget = [10_000_000]

        def descend(colors: list[int]) -> int:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceededError(
                    f"canonical form search exceeded its node budget at n = {n}"
                )
            target = -1
            for c in range(n):
                if sum(1 for x in colors if x == c) > 1:
                    target = c
                    break
            if target < 0:
                # discrete partition: color = position
                bits = 0
                for e in edges:
                    bits |= 1 << rank[tuple(sorted(colors[v] for v in e))]
                return bits
            best: int | None = None
            for v in range(n):
                if colors[v] != target:
                    continue
                # mark v apart, keeping the palette ordered
                marked = [2 * c + (0 if u == v else 1) for u, c in enumerate(colors)]
                palette = {c: i for i, c in enumerate(sorted(set(marked)))}
                sub = descend(self._refine_colors([palette[c] for c in marked]))
                if best is None or sub < best:
                    best = sub
            assert best is not None
            return best

        colors = self._refine_colors([self.degree(v) for v in range(n)])
        return (k, n, descend(colors))

    @property
    def canonical_id(self) -> str:
        k, n, bits = self.canonical_key
        return f"{k}u{n}:{bits:x}"

    def canonical_form(self) -> "KHypergraph":
        """The canonically labeled representative of the isomorphism class."""
        k, n, bits = self.canonical_key
        return KHypergraph.from_edge_mask(k, n, bits)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"KHypergraph(k={self.k}, n={self.n}, m={len(self.edges)})"


# Alias: a Graph is exactly the 2-uniform case.
Graph = KHypergraph


def require_graph(g: KHypergraph) -> None:
    if g.k != 2:
        raise ValueError(f"expected a graph (k = 2), got k = {g.k}")


def are_isomorphic(g: KHypergraph, h: KHypergraph) -> bool:
    """Isomorphism test via canonical keys (exercised up to n = 8)."""
    if (g.k, g.n, len(g.edges)) != (h.k, h.n, len(h.edges)):
        return False
    return g.canonical_key == h.canonical_key


# -- enumeration ---------------------------------------------------------


@lru_cache(maxsize=None)
def iso_classes(k: int, n: int) -> tuple[KHypergraph, ...]:
    """All isomorphism classes of k-uniform hypergraphs on n vertices.

    Built by extending each (n-1)-vertex class with one new last vertex in
    every possible way and deduplicating by canonical key.  Deleting the
    last vertex of any n-vertex hypergraph lands in some (n-1)-vertex
    class, so the sweep is exhaustive.  Representatives come out in
    canonical labeling, sorted by edge bitset.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if n < k or n == 0:
        return (KHypergraph(k, n, frozenset()),)
    parents = iso_classes(k, n - 1)
    slots = ksubsets(n - 1, k - 1)
    work = len(parents) * (1 << len(slots))
    if work > default_budget():
        raise BudgetExceededError(
            f"iso enumeration at k={k}, n={n} needs {work} extension steps"
        )
    seen: set[tuple[int, int, int]] = set()
    keys: list[int] = []
    for parent in parents:
        base = set(parent.edges)
        for mask in range(1 << len(slots)):
            edges = set(base)
            m = mask
            while m:
                low = m & -m
                edges.add(slots[low.bit_length() - 1] + (n - 1,))
                m ^= low
            key = KHypergraph(k, n, frozenset(edges)).canonical_key
            if key not in seen:
                seen.add(key)
                keys.append(key[2])
    return tuple(KHypergraph.from_edge_mask(k, n, bits) for bits in sorted(keys))


def enumerate_hypergraphs(
    k: int, n: int, iso_reduce: bool = False, budget: int | None = None
) -> Iterator[KHypergraph]:
    """Stream every k-uniform hypergraph on n vertices, deterministically.

    Labeled mode walks all 2^C(n, k) edge bitsets in colex order.  With
    ``iso_reduce`` one canonical representative per isomorphism class is
    produced, sorted by canonical edge bitset.  Exceeding the budget raises
    :class:`BudgetExceededError` before any instance is produced.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    cap = budget if budget is not None else default_budget()
    if iso_reduce:
        yield from iso_classes(k, n)
        return
    total = 1 << comb(n, k)
    if total > cap:
        raise BudgetExceededError(
            f"labeled enumeration at k={k}, n={n} has {total} instances, budget {cap}"
        )
    for mask in range(total):
        yield KHypergraph.from_edge_mask(k, n, mask)


# -- plain constructions --------------------------------------------------


def empty_hypergraph(k: int, n: int) -> KHypergraph:
    return KHypergraph(k, n, frozenset())


def complete_hypergraph(k: int, n: int) -> KHypergraph:
    return KHypergraph(k, n, frozenset(ksubsets(n, k)))


def graph_of(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    return KHypergraph.of(2, n, edges)


def empty_graph(n: int) -> Graph:
    return empty_hypergraph(2, n)


def complete_graph(n: int) -> Graph:
    return complete_hypergraph(2, n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return graph_of(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return graph_of(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return graph_of(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_of(10, outer + spokes + inner)


def random_hypergraph(k: int, n: int, p: float, rng) -> KHypergraph:
    """Each k-subset is an edge independently with probability p."""
    return KHypergraph(
        k, n, frozenset(s for s in ksubsets(n, k) if rng.random() < p)
    )


# -- .khg text format ------------------------------------------------------
#
# Line 1: "k n".  Every following non-empty line that does not start with
# '#' is one edge: k space-separated strictly increasing 0-based vertex
# indices.  Serialization emits edges in colex order, LF line endings, so
# parse/serialize round-trips are bit exact on canonical output.


def parse_khg(text: str) -> KHypergraph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            values = [int(p) for p in parts]
        except ValueError as exc:
            raise KhgParseError(f"line {lineno}: non-integer token") from exc
        if header is None:
            if len(values) != 2:
                raise KhgParseError(f"line {lineno}: header must be 'k n'")
            k, n = values
            if k < 1 or n < 0:
                raise KhgParseError(f"line {lineno}: header out of range")
            header = (k, n)
            continue
        k, n = header
        if len(values) != k:
            raise KhgParseError(f"line {lineno}: expected {k} vertices, got {len(values)}")
        if any(not (0 <= v < n) for v in values):
            raise KhgParseError(f"line {lineno}: vertex out of range(0, {n})")
        if any(values[i] >= values[i + 1] for i in range(k - 1)):
            raise KhgParseError(f"line {lineno}: vertices must be strictly increasing")
        edge = tuple(values)
        if edge in seen:
            raise KhgParseError(f"line {lineno}: duplicate edge {edge}")
        seen.add(edge)
        edges.append(edge)
    if header is None:
        raise KhgParseError("missing 'k n' header line")
    return KHypergraph(header[0], header[1], frozenset(edges))


def to_khg(g: KHypergraph, comment: str | None = None) -> str:
    lines: list[str] = []
    if comment:
        for chunk in comment.splitlines():
            lines.append(f"# {chunk}")
    lines.append(f"{g.k} {g.n}")
    for e in g.edge_list:
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"
