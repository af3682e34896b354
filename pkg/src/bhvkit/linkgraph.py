"""The compatibility graph on splits and its symmetries.

Vertices are all canonical splits on n leaves; edges join compatible pairs.
The size-k layers are Kneser graphs, whose maximum independent sets are the
leaf stars, and the full automorphism group is realized by leaf relabelings.
Both facts are checked here by exhaustive search at desk scale rather than
assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    KOutOfRange,
    LeafCountMismatch,
    SearchBudgetExceeded,
    TooLarge,
    VertexNotFound,
)
from .splits import (
    Permutation,
    Split,
    apply_permutation,
    are_compatible,
    check_leaf_count,
    enumerate_splits,
)

MAX_LINK_LEAVES = 12
AUT_MAX_VERTICES = 60
DEFAULT_NODE_CAP = 5_000_000
DEFAULT_ELEMENT_CAP = 100_000
DEFAULT_MIS_VERTEX_CAP = 25

VertexPerm = tuple[int, ...]


@dataclass(frozen=True)
class LinkGraph:
    """Undirected graph over splits; adjacency rows are vertex-index bitmasks."""

    n: int
    vertices: tuple[Split, ...]
    adjacency: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def index_of(self, v: Split) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise VertexNotFound(f"{v} is not a vertex of this graph") from None

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        row = self.adjacency[i]
        return [j for j in range(self.vertex_count) if row >> j & 1]

    def to_dot(self) -> str:
        def name(v: Split) -> str:
            return '"' + ",".join(map(str, v.side)) + '"'

        lines = ["graph link {"]
        for v in self.vertices:
            lines.append(f"  {name(v)};")
        for i in range(self.vertex_count):
            for j in self.neighbors(i):
                if i < j:
                    lines.append(f"  {name(self.vertices[i])} -- {name(self.vertices[j])};")
        lines.append("}")
        return "\n".join(lines)


def build_link_graph(n: int) -> LinkGraph:
    """Graph with every canonical split as a vertex and compatible pairs as edges."""
    check_leaf_count(n)
    if n > MAX_LINK_LEAVES:
        raise TooLarge(f"link graph capped at n = {MAX_LINK_LEAVES}, got {n}")
    vertices = tuple(enumerate_splits(n))
    rows = [0] * len(vertices)
    for i, u in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if are_compatible(u, vertices[j]):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return LinkGraph(n, vertices, tuple(rows))


def degree_formula(n: int, k: int) -> int:
    """Closed-form degree of a size-k vertex: 2^k + 2^(n-k) - n - 4."""
    check_leaf_count(n)
    if k < 2 or 2 * k > n:
        raise KOutOfRange(f"need 2 <= k <= n/2, got k={k} for n={n}")
    return 2**k + 2 ** (n - k) - n - 4


def verify_degrees(g: LinkGraph) -> bool:
    """True when every vertex degree matches the closed-form formula."""
    return all(
        g.degree(i) == degree_formula(g.n, v.size) for i, v in enumerate(g.vertices)
    )


def kneser_subgraph(g: LinkGraph, k: int) -> LinkGraph:
    """Induced subgraph on the size-k vertices.

    For k < n/2 this is the Kneser graph on k-subsets: adjacency within the
    layer is exactly disjointness of sides.
    """
    if k < 2 or 2 * k > g.n:
        raise KOutOfRange(f"need 2 <= k <= n/2, got k={k} for n={g.n}")
    keep = [i for i, v in enumerate(g.vertices) if v.size == k]
    pos = {i: j for j, i in enumerate(keep)}
    rows = [0] * len(keep)
    for j, i in enumerate(keep):
        row = g.adjacency[i]
        for i2 in keep:
            if row >> i2 & 1:
                rows[j] |= 1 << pos[i2]
    return LinkGraph(g.n, tuple(g.vertices[i] for i in keep), tuple(rows))


def ekr_independent_sets(g: LinkGraph, k: int) -> list[frozenset[Split]]:
    """The n leaf stars in the size-k layer: for each leaf i, all size-k
    splits whose side contains i. Each has size C(n-1, k-1) and is
    independent (shared leaf forces intersecting sides)."""
    if k < 2 or 2 * k >= g.n:
        raise KOutOfRange(f"need 2 <= k < n/2, got k={k} for n={g.n}")
    layer = [v for v in g.vertices if v.size == k]
    return [frozenset(v for v in layer if v.contains(i)) for i in range(1, g.n + 1)]


def maximum_independent_sets(
    g: LinkGraph,
    max_vertices: int = DEFAULT_MIS_VERTEX_CAP,
    node_cap: int = DEFAULT_NODE_CAP,
) -> list[frozenset[Split]]:
    """All independent sets of maximum size, by exact branch and bound.

    A greedy independent set seeds the size bound; branches that cannot
    reach it are cut. Branching removes the highest-degree candidate first
    so the include branch prunes hard.
    """
    nv = g.vertex_count
    if nv > max_vertices:
        raise TooLarge(f"{nv} vertices exceeds configured cap {max_vertices}")
    adj = g.adjacency

    # greedy seed: repeatedly take a minimum-degree vertex of what remains
    remaining = (1 << nv) - 1
    greedy = 0
    while remaining:
        best_v, best_deg = -1, nv + 1
        m = remaining
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = (adj[v] & remaining).bit_count()
            if d < best_deg:
                best_v, best_deg = v, d
        greedy += 1
        remaining &= ~((1 << best_v) | adj[best_v])

    order = sorted(range(nv), key=lambda v: adj[v].bit_count(), reverse=True)
    best = greedy
    results: list[int] = []
    budget = node_cap

    def search(chosen: int, size: int, cand: int):
        nonlocal best, results, budget
        budget -= 1
        if budget < 0:
            raise SearchBudgetExceeded(f"independent-set search exceeded {node_cap} nodes")
        if size + cand.bit_count() < best:
            return
        if not cand:
            if size > best:
                best = size
                results = [chosen]
            elif size == best:
                results.append(chosen)
            return
        for v in order:
            if cand >> v & 1:
                break
        search(chosen | (1 << v), size + 1, cand & ~((1 << v) | adj[v]))
        search(chosen, size, cand & ~(1 << v))

    search(0, 0, (1 << nv) - 1)
    sets = [
        frozenset(g.vertices[v] for v in range(nv) if mask >> v & 1) for mask in results
    ]
    sets.sort(key=lambda s: sorted(sp.side for sp in s))
    return sets


def neighbors_of_size(g: LinkGraph, v: Split, size: int) -> set[Split]:
    """Neighbors of v whose canonical side has the given size."""
    i = g.index_of(v)
    row = g.adjacency[i]
    return {
        g.vertices[j]
        for j in range(g.vertex_count)
        if row >> j & 1 and g.vertices[j].size == size
    }


def upward_neighbors(g: LinkGraph, v: Split) -> set[Split]:
    """Neighbors one size larger than v's canonical side."""
    return neighbors_of_size(g, v, v.size + 1)


def downward_neighbors(g: LinkGraph, v: Split) -> set[Split]:
    """Neighbors one size smaller than v's canonical side."""
    return neighbors_of_size(g, v, v.size - 1)


@dataclass(frozen=True)
class AutomorphismGroup:
    """Search result: group order, a small generating set, and (when the
    order is modest) the complete element list as vertex permutations."""

    order: int
    generators: tuple[VertexPerm, ...]
    elements: tuple[VertexPerm, ...] | None


def _vertex_signatures(g: LinkGraph) -> list[tuple]:
    degs = [g.degree(i) for i in range(g.vertex_count)]
    return [
        (degs[i], tuple(sorted(degs[j] for j in g.neighbors(i))))
        for i in range(g.vertex_count)
    ]


def _compose(p: VertexPerm, q: VertexPerm) -> VertexPerm:
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[x] for x in q)


def _closure(gens: list[VertexPerm], nv: int) -> set[VertexPerm]:
    identity = tuple(range(nv))
    known = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for e in frontier:
            for gen in gens:
                prod = _compose(gen, e)
                if prod not in known:
                    known.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return known


def _generating_subset(elements: list[VertexPerm], nv: int) -> tuple[VertexPerm, ...]:
    gens: list[VertexPerm] = []
    known: set[VertexPerm] = {tuple(range(nv))}
    for e in sorted(elements):
        if e not in known:
            gens.append(e)
            known = _closure(gens, nv)
            if len(known) == len(elements):
                break
    return tuple(gens)


def is_vertex_automorphism(g: LinkGraph, perm: VertexPerm) -> bool:
    """Exhaustive adjacency-preservation check for a vertex permutation."""
    nv = g.vertex_count
    if sorted(perm) != list(range(nv)):
        return False
    return all(
        g.adjacent(i, j) == g.adjacent(perm[i], perm[j])
        for i in range(nv)
        for j in range(i + 1, nv)
    )


def brute_force_automorphisms(
    g: LinkGraph,
    node_cap: int = DEFAULT_NODE_CAP,
    element_cap: int = DEFAULT_ELEMENT_CAP,
) -> AutomorphismGroup:
    """Every adjacency-preserving vertex permutation, by backtracking.

    Candidate images start as the (degree, neighbor-degree multiset)
    signature class of each vertex. Mapping v -> w propagates immediately:
    every unmapped vertex keeps only candidates on the correct side of w's
    adjacency. The vertex with the fewest candidates is assigned next, and
    all complete assignments are collected, so the result is the full group.
    """
    nv = g.vertex_count
    if nv > AUT_MAX_VERTICES:
        raise TooLarge(f"{nv} vertices exceeds automorphism cap {AUT_MAX_VERTICES}")
    sig = _vertex_signatures(g)
    adj = g.adjacency
    all_mask = (1 << nv) - 1
    base_cand = [
        sum(1 << w for w in range(nv) if sig[w] == sig[v]) for v in range(nv)
    ]

    image = [-1] * nv
    elements: list[VertexPerm] = []
    budget = node_cap

    def extend(cand: list[int], unmapped: int):
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise SearchBudgetExceeded(f"automorphism search exceeded {node_cap} nodes")
        if not unmapped:
            elements.append(tuple(image))
            return
        v, fewest = -1, nv + 1
        m = unmapped
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            count = cand[u].bit_count()
            if count < fewest:
                v, fewest = u, count
                if count <= 1:
                    break
        if fewest == 0:
            return
        rest = unmapped & ~(1 << v)
        adj_v = adj[v]
        options = cand[v]
        while options:
            w = (options & -options).bit_length() - 1
            options &= options - 1
            narrowed = list(cand)
            adj_w = adj[w]
            ok = True
            m = rest
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                keep = adj_w if adj_v >> u & 1 else all_mask & ~adj_w
                narrowed[u] = narrowed[u] & keep & ~(1 << w)
                if not narrowed[u]:
                    ok = False
                    break
            if ok:
                image[v] = w
                extend(narrowed, rest)
                image[v] = -1

    extend(base_cand, all_mask)
    elements.sort()
    group_order = len(elements)
    if math.factorial(nv) % group_order:
        raise AssertionError("group order does not divide the vertex factorial")
    generators = _generating_subset(elements, nv)
    for gen in generators:
        if not is_vertex_automorphism(g, gen):
            raise AssertionError("search produced a non-automorphism generator")
    kept = tuple(elements) if group_order <= element_cap else None
    return AutomorphismGroup(group_order, generators, kept)


def permutation_to_automorphism(sigma: Permutation, g: LinkGraph) -> VertexPerm:
    """The vertex permutation induced by relabeling leaves through sigma."""
    if sigma.n != g.n:
        raise LeafCountMismatch(f"permutation of {sigma.n} leaves vs graph on {g.n}")
    lookup = {v: i for i, v in enumerate(g.vertices)}
    return tuple(lookup[apply_permutation(sigma, v)] for v in g.vertices)


def link_report(g: LinkGraph) -> dict:
    """Summary used by the CLI: counts plus the degree-formula check."""
    return {
        "n": g.n,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "degrees_ok": verify_degrees(g),
    }
