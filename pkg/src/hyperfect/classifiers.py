"""Perfectness classes beyond the two coloring notions, and the full report.

The coloring module owns the Berge and C_omega tests; everything else lives
here:

* clique friendliness: no k+1 vertices span between 3 and k edges,
* H-perfectness: every (k-2)-link is a perfect graph, with the omega and
  alpha variants (H_omega adds clique friendliness, H_alpha and C_alpha go
  through the complement, doubly perfect is the conjunction of C_omega and
  C_alpha),
* Ramsey numbers R_s(k) with explicit provenance, and R-perfectness,
* the two-sided coloring property ([PC]) with its product coloring,
* HD_r clique-cover implications,
* exact independent-set covers (the chi-boundedness data),
* Voloshin's upper chromatic number.

``classify`` bundles all verdicts for one instance and cross-checks the
implication arrows between the classes; a violated arrow is an internal
bug, never a property of the input, so it raises instead of reporting.

Complement reductions are definitional: the link of X in the complement is
the complement of the link of X, so H_alpha = H_omega of the complement,
and C_alpha = C_omega of the complement.  Witness vertex labels survive
these reductions unchanged because complement preserves labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Mapping

from .core import (
    BudgetExceededError,
    KHypergraph,
    complete_hypergraph,
    default_budget,
    ksubsets,
)
from .coloring import (
    Certificate,
    TupleColoring,
    hereditary_all,
    first_local_failure,
    is_berge,
    is_c_omega_perfect,
    is_graph_perfect,
    memoized_local,
    search_coloring,
)

__all__ = [
    "is_clique_friendly",
    "is_h_perfect",
    "is_h_omega_perfect",
    "is_h_alpha_perfect",
    "is_c_alpha_perfect",
    "is_doubly_perfect",
    "RamseyTable",
    "RamseyUnknown",
    "ramsey_number",
    "brute_force_ramsey",
    "is_r_perfect",
    "has_pc_property",
    "min_independent_cover",
    "chi_bound_cover",
    "has_hd_property",
    "voloshin_upper_chromatic",
    "is_voloshin_perfect",
    "ClassificationReport",
    "ImplicationViolation",
    "classify",
]


# -- clique friendliness -----------------------------------------------------


def is_clique_friendly(g: KHypergraph) -> Certificate:
    """No set of k+1 vertices may span between 3 and k edges inclusive.

    Each (k+1)-set must carry at most two or all k+1 of its k-subsets as
    edges.  For graphs the forbidden band [3, 2] is empty, so every graph
    is clique friendly.  The property is closed under induced subhypergraphs
    as stated, so no hereditary closure is needed.
    """
    for ws in combinations(range(g.n), g.k + 1):
        spanned = sum(1 for e in combinations(ws, g.k) if g.has_edge(e))
        if 3 <= spanned <= g.k:
            return Certificate.no(
                {"kind": "unfriendly_set", "vertices": ws, "edges_spanned": spanned}
            )
    return Certificate.yes()


def _clique_friendly_bool(g: KHypergraph) -> bool:
    return is_clique_friendly(g).verdict is True


# -- link perfectness --------------------------------------------------------


def _translate_labels(witness: dict | None, vmap) -> dict | None:
    if witness is None:
        return None
    out = dict(witness)
    for key in ("cycle", "vertices"):
        if key in out:
            out[key] = tuple(vmap[v] for v in out[key])
    return out


def is_h_perfect(g: KHypergraph) -> Certificate:
    """Is the link of every (k-2)-subset a perfect graph?

    For graphs the only X is the empty set and the test reduces to graph
    perfectness.  Hereditary closure is automatic: a link inside an induced
    subhypergraph is an induced subgraph of the corresponding link, and
    perfect graphs are closed under induced subgraphs.
    """
    if g.k < 2:
        raise ValueError("uniformity k >= 2 required")
    for x in combinations(range(g.n), g.k - 2):
        link, vmap = g.link_with_map(x)
        cert = is_graph_perfect(link)
        if cert.verdict is False:
            return Certificate.no(
                {
                    "kind": "imperfect_link",
                    "x": x,
                    "link": _translate_labels(cert.witness, vmap),
                }
            )
    return Certificate.yes()


def is_h_omega_perfect(g: KHypergraph) -> Certificate:
    """H-perfect and clique friendly."""
    h = is_h_perfect(g)
    if h.verdict is False:
        return h
    return is_clique_friendly(g)


def is_h_alpha_perfect(g: KHypergraph) -> Certificate:
    """Is the complement H_omega-perfect?

    Links commute with complement (the link of X in the complement is the
    complement of the link of X), so this checks that every (k-2)-link has
    a perfect complement, which by the weak perfect graph theorem is the
    alpha-side mirror of H-perfectness.
    """
    return is_h_omega_perfect(g.complement())


# -- complement and conjunction of the coloring classes ----------------------


def is_c_alpha_perfect(g: KHypergraph, witness: bool = True) -> Certificate:
    """C_omega-perfectness of the complement."""
    return is_c_omega_perfect(g.complement(), witness)


def is_doubly_perfect(g: KHypergraph, witness: bool = True) -> Certificate:
    """C_omega-perfect and C_alpha-perfect."""
    cw = is_c_omega_perfect(g, witness)
    if cw.verdict is False:
        return Certificate.no(
            None if cw.witness is None else {"side": "omega", **cw.witness}
        )
    ca = is_c_alpha_perfect(g, witness)
    if ca.verdict is False:
        return Certificate.no(
            None if ca.witness is None else {"side": "alpha", **ca.witness}
        )
    return Certificate.yes()


# -- Ramsey numbers ----------------------------------------------------------


class RamseyUnknown(LookupError):
    """R_s(k) is not available from the table in use."""

    def __init__(self, s: int, k: int) -> None:
        super().__init__(f"R_{s}({k}) is not known to this table")
        self.s = s
        self.k = k


def _forces_mono(s: int, k: int, n: int) -> bool:
    # an s-coloring of the (k-1)-subsets avoiding monochromatic K_k^{k-1}
    # is exactly a proper s-coloring of the complete k-uniform hypergraph
    return search_coloring(complete_hypergraph(k, n), (), s) is None


def brute_force_ramsey(s: int, k: int, n_max: int) -> int | None:
    """Smallest n <= n_max at which every s-coloring has a monochromatic
    K_k^{k-1}, by exhausting the colorings; None if no such n exists below
    the cutoff."""
    if s < 1 or k < 2:
        raise ValueError("need s >= 1 and k >= 2")
    for n in range(k, n_max + 1):
        if _forces_mono(s, k, n):
            return n
    return None


@dataclass(frozen=True)
class RamseyEntry:
    value: int
    provenance: str  # closed_form | brute_forced | external | unknown
    checked_up_to: int | None = None  # for brute_forced: colorings exhausted at this n


@dataclass(frozen=True)
class RamseyTable:
    """Known values of R_s(k) with provenance.

    R_s(2) = s + 1 is served as a closed form for every s.  The default
    table carries the two brute-forceable 3-uniform values; the externally
    sourced R_3(3) = 17 is available but off by default so that nothing a
    desk machine cannot re-verify grounds a verdict.
    """

    entries: Mapping[tuple[int, int], RamseyEntry] = field(default_factory=dict)

    @classmethod
    def default(cls, include_external: bool = False) -> "RamseyTable":
        entries: dict[tuple[int, int], RamseyEntry] = {}
        for s in (1, 2):
            value = brute_force_ramsey(s, 3, 8)
            assert value is not None
            entries[(s, 3)] = RamseyEntry(value, "brute_forced", checked_up_to=value)
        if include_external:
            entries[(3, 3)] = RamseyEntry(17, "external")
        return cls(entries)

    def lookup(self, s: int, k: int) -> int:
        if k == 2 and s >= 0:
            return s + 1
        entry = self.entries.get((s, k))
        if entry is None:
            raise RamseyUnknown(s, k)
        return entry.value

    def get(self, s: int, k: int) -> int | None:
        try:
            return self.lookup(s, k)
        except RamseyUnknown:
            return None

    def provenance(self, s: int, k: int) -> str:
        if k == 2 and s >= 0:
            return "closed_form"
        entry = self.entries.get((s, k))
        return "unknown" if entry is None else entry.provenance


@lru_cache(maxsize=1)
def _default_table() -> RamseyTable:
    return RamseyTable.default()


def ramsey_number(s: int, k: int, table: RamseyTable | None = None) -> int | None:
    """R_s(k) if known to the table (default table: closed form for k = 2,
    brute-forced (1,3) and (2,3)), else None."""
    if table is None:
        table = _default_table()
    return table.get(s, k)


# -- R-perfectness -----------------------------------------------------------


def _r_perfect_instances(
    g: KHypergraph,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], KHypergraph]]:
    """All (induced vertex set, X, instance) triples the definition covers.

    The instance is the induced subhypergraph itself for X = (), else the
    link of the nonempty X inside it.  Induced subgraphs of links are links
    inside smaller induced subhypergraphs, so this double scan already
    closes the family under both operations.
    """
    for size in range(g.n + 1):
        for vs in combinations(range(g.n), size):
            h = g.induced(vs)
            yield vs, (), h
            for xsize in range(1, h.k - 1):
                for x in combinations(range(h.n), xsize):
                    yield vs, tuple(vs[i] for i in x), h.link(x)


def is_r_perfect(g: KHypergraph, table: RamseyTable | None = None) -> Certificate:
    """Does |V| < R_s(k') hold, with s = (alpha-k'+2)(omega-k'+2), for the
    hypergraph, every induced subhypergraph, and every link of every X with
    |X| < k - 1 inside those?

    A definite violation wins over missing table entries; otherwise any
    unknown Ramsey index makes the verdict indeterminate.
    """
    if table is None:
        table = _default_table()
    unknown: set[tuple[int, int]] = set()
    for vs, x, h in _r_perfect_instances(g):
        if h.n < h.k:
            continue  # too small to contain any K_k^{k-1}, bound is free
        s = (h.independence_number - h.k + 2) * (h.clique_number - h.k + 2)
        try:
            bound = table.lookup(s, h.k)
        except RamseyUnknown:
            unknown.add((s, h.k))
            continue
        if h.n >= bound:
            return Certificate.no(
                {
                    "kind": "ramsey_bound",
                    "vertices": vs,
                    "x": x,
                    "alpha": h.independence_number,
                    "omega": h.clique_number,
                    "s": s,
                    "ramsey": bound,
                }
            )
    if unknown:
        indices = sorted(unknown)
        return Certificate.unknown(
            "needs Ramsey numbers outside the table: "
            + ", ".join(f"R_{s}({k})" for s, k in indices),
            {"kind": "ramsey_unknown", "indices": indices},
        )
    return Certificate.yes()


# -- the two-sided coloring property ------------------------------------------


def has_pc_property(g: KHypergraph) -> Certificate:
    """Proper (omega-k+2)-coloring of g and (alpha-k+2)-coloring of the
    complement, both exact searches.

    On success the witness carries both colorings plus their product
    (pairs of colors), re-verified to leave no k-set with all of its
    (k-1)-subsets in one product color; a monochromatic k-set would be an
    edge of g or of the complement and contradict one factor, so a failure
    here is an internal bug.
    """
    if g.n < g.k - 1:
        return Certificate.yes()
    t1 = g.clique_number - g.k + 2
    t2 = g.independence_number - g.k + 2
    c1 = search_coloring(g, (), t1)
    if c1 is None:
        return Certificate.no({"kind": "no_omega_coloring", "t": t1})
    c2 = search_coloring(g.complement(), (), t2)
    if c2 is None:
        return Certificate.no({"kind": "no_alpha_coloring", "t": t2})
    product = TupleColoring(
        g.k - 1,
        t1 * t2,
        {tup: c1.colors[tup] * t2 + c2.colors[tup] for tup in ksubsets(g.n, g.k - 1)},
    )
    for w in combinations(range(g.n), g.k):
        values = {product.colors[sub] for sub in combinations(w, g.k - 1)}
        if len(values) == 1:
            raise AssertionError(f"product coloring is monochromatic on {w}")
    return Certificate.yes(
        {"omega_coloring": c1, "alpha_coloring": c2, "product_coloring": product}
    )


# -- independent-set covers ---------------------------------------------------


def _maximal_independent_masks(g: KHypergraph) -> list[int]:
    edge_masks = [sum(1 << v for v in e) for e in g.edge_list]

    def independent(mask: int) -> bool:
        return all(em & mask != em for em in edge_masks)

    out = []
    for mask in range(1, 1 << g.n):
        if not independent(mask):
            continue
        if any(
            not mask >> v & 1 and independent(mask | 1 << v) for v in range(g.n)
        ):
            continue
        out.append(mask)
    return out


def min_independent_cover(
    g: KHypergraph, budget: int | None = None
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Exact minimum number of independent sets covering V(g), with a cover.

    Branch and bound over maximal independent sets: branch on the lowest
    uncovered vertex, across the maximal sets containing it.  ``budget``
    caps the node count (default from the environment); exhaustion raises
    BudgetExceededError rather than returning a bound.
    """
    if g.n == 0:
        return 0, ()
    maximal = _maximal_independent_masks(g)
    by_vertex: list[list[int]] = [[] for _ in range(g.n)]
    for m in maximal:
        for v in range(g.n):
            if m >> v & 1:
                by_vertex[v].append(m)
    if any(not sets for sets in by_vertex):
        # only possible when a single vertex is itself an edge (k = 1)
        raise ValueError("some vertex lies in no independent set")
    limit = default_budget() if budget is None else budget
    nodes = 0
    best_size = g.n + 1
    best: list[int] = []
    chosen: list[int] = []

    def descend(uncovered: int) -> None:
        nonlocal nodes, best_size, best
        nodes += 1
        if nodes > limit:
            raise BudgetExceededError(f"cover search exceeded {limit} nodes")
        if uncovered == 0:
            best_size = len(chosen)
            best = chosen[:]
            return
        if len(chosen) + 1 >= best_size:
            return
        v = (uncovered & -uncovered).bit_length() - 1
        for m in by_vertex[v]:
            chosen.append(m)
            descend(uncovered & ~m)
            chosen.pop()

    descend((1 << g.n) - 1)
    cover = tuple(
        tuple(v for v in range(g.n) if m >> v & 1) for m in best
    )
    assert best_size <= g.n
    return best_size, cover


def chi_bound_cover(g: KHypergraph, budget: int | None = None) -> Certificate:
    """Can V(g) be covered by max(1, omega - k + 2) independent sets?

    This is the bound the chi-boundedness results aim at: for graphs it is
    chromatic number <= clique number, for 3-uniform doubly perfect
    instances it is the omega - 1 cover.  Budget exhaustion reports
    indeterminate, never false.
    """
    bound = max(1, g.clique_number - g.k + 2)
    try:
        size, cover = min_independent_cover(g, budget)
    except BudgetExceededError as exc:
        return Certificate.unknown(str(exc), {"kind": "budget", "bound": bound})
    if size <= bound:
        return Certificate.yes({"cover": cover, "size": size, "bound": bound})
    return Certificate.no({"cover": cover, "size": size, "bound": bound})


# -- HD_r clique covers -------------------------------------------------------


def _min_clique_cover(
    g: KHypergraph, budget: int | None = None
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    # complete subhypergraphs of g are the independent sets of the complement
    return min_independent_cover(g.complement(), budget)


def has_hd_property(g: KHypergraph, r: int, budget: int | None = None) -> Certificate:
    """For every p >= q >= k with p(r-1) < (q-1)r: if all p-sets of V(g)
    contain a complete subhypergraph on q vertices, then V(g) has a cover
    by p - q + 1 complete subhypergraphs.

    The quantification runs over all valid (p, q) pairs, p ascending then q
    ascending, so the reported failure is the first one in that order.
    Pairs whose hypothesis fails are satisfied vacuously.
    """
    if r < 1:
        raise ValueError("r >= 1 required")
    for p in range(g.k, g.n + 1):
        for q in range(g.k, p + 1):
            if not p * (r - 1) < (q - 1) * r:
                continue
            if any(
                g.induced(ps).clique_number < q
                for ps in combinations(range(g.n), p)
            ):
                continue
            try:
                size, cover = _min_clique_cover(g, budget)
            except BudgetExceededError as exc:
                return Certificate.unknown(str(exc), {"kind": "budget", "p": p, "q": q})
            if size > p - q + 1:
                return Certificate.no(
                    {
                        "kind": "hd_failure",
                        "p": p,
                        "q": q,
                        "clique_cover": size,
                        "cover_bound": p - q + 1,
                        "cover": cover,
                    }
                )
    return Certificate.yes()


# -- Voloshin upper chromatic number ------------------------------------------


def voloshin_upper_chromatic(g: KHypergraph) -> int:
    """Maximum color count over vertex colorings with no rainbow edge.

    A rainbow edge carries k pairwise distinct colors.  Exhaustive over set
    partitions in restricted-growth order; color classes are unordered so
    this is exact.
    """
    if g.n == 0:
        return 0
    edges = g.edge_list
    best = 0
    colors = [0] * g.n

    def descend(i: int, used: int) -> None:
        nonlocal best
        if i == g.n:
            best = max(best, used)
            return
        for c in range(min(used + 1, g.n)):
            colors[i] = c
            if all(
                len({colors[v] for v in e}) < g.k
                for e in edges
                if e[-1] == i
            ):
                descend(i + 1, max(used, c + 1))

    descend(0, 0)
    assert best >= 1
    return best


def _voloshin_local(h: KHypergraph) -> bool:
    return voloshin_upper_chromatic(h) == h.independence_number


_voloshin_cached = memoized_local("voloshin", _voloshin_local)


def is_voloshin_perfect(g: KHypergraph) -> Certificate:
    """Does every induced subhypergraph have upper chromatic number equal
    to its independence number?

    Equality can fail in either direction: a connected graph with an edge
    has upper chromatic number 1, which is less than alpha as soon as any
    two vertices are nonadjacent.
    """
    if hereditary_all(g, "voloshin", _voloshin_cached):
        return Certificate.yes()
    bad = first_local_failure(g, _voloshin_cached)
    assert bad is not None
    h = g.induced(bad)
    return Certificate.no(
        {
            "kind": "voloshin_gap",
            "vertices": bad,
            "upper_chromatic": voloshin_upper_chromatic(h),
            "alpha": h.independence_number,
        }
    )


# -- the combined report ------------------------------------------------------


class ImplicationViolation(RuntimeError):
    """Two class verdicts contradict a theorem; this is an implementation
    bug, not a property of the input."""


@dataclass(frozen=True)
class ClassificationReport:
    instance: KHypergraph
    id: str
    classes: dict[str, Certificate]

    def verdict(self, name: str) -> bool | None:
        return self.classes[name].verdict

    def to_jsonable(self) -> dict:
        return {
            "id": self.id,
            "n": self.instance.n,
            "k": self.instance.k,
            "classes": {
                name: cert.to_jsonable() for name, cert in self.classes.items()
            },
        }


def _check_arrows(classes: Mapping[str, Certificate]) -> None:
    def v(name: str) -> bool | None:
        return classes[name].verdict

    arrows = [
        ("h_omega", "berge"),
        ("berge", "c_omega"),
        ("c_omega", "berge"),
        ("c_omega", "clique_friendly"),
    ]
    for weak, strong in arrows:
        if v(weak) is True and v(strong) is False:
            raise ImplicationViolation(f"{weak} holds but {strong} fails")
    if v("doubly") != (
        None
        if v("c_omega") is None or v("c_alpha") is None
        else v("c_omega") and v("c_alpha")
    ):
        raise ImplicationViolation("doubly differs from c_omega and c_alpha")
    if v("h_omega") != (
        None
        if v("h_perfect") is None or v("clique_friendly") is None
        else v("h_perfect") and v("clique_friendly")
    ):
        raise ImplicationViolation("h_omega differs from h_perfect and clique_friendly")


def classify(
    g: KHypergraph,
    r_values: tuple[int, ...] | list[int] | None = None,
    table: RamseyTable | None = None,
) -> ClassificationReport:
    """All class verdicts for one instance, with the implication arrows
    between them checked.

    ``r_values`` selects which HD_r verdicts to include (default: r = k
    only).  Indeterminate verdicts (unknown Ramsey index, exhausted cover
    budget) stay out of the arrow checks.
    """
    if r_values is None:
        r_values = (g.k,)
    classes: dict[str, Certificate] = {
        "clique_friendly": is_clique_friendly(g),
        "berge": is_berge(g),
        "c_omega": is_c_omega_perfect(g),
        "c_alpha": is_c_alpha_perfect(g),
        "doubly": is_doubly_perfect(g),
        "h_perfect": is_h_perfect(g),
        "h_omega": is_h_omega_perfect(g),
        "h_alpha": is_h_alpha_perfect(g),
        "r_perfect": is_r_perfect(g, table),
        "pc": has_pc_property(g),
        "voloshin": is_voloshin_perfect(g),
        "chi_bound_cover": chi_bound_cover(g),
    }
    for r in r_values:
        classes[f"hd_{r}"] = has_hd_property(g, r)
    _check_arrows(classes)
    return ClassificationReport(g, g.canonical_id, classes)
