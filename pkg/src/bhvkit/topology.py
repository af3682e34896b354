"""Tree topologies as compatible split sets.

A topology is a set of pairwise-compatible splits on n leaves; it names a
face of tree space with one coordinate per split. The unique unrooted tree
realizing the set is rebuilt explicitly (InternalTree) so that degree
sequences, orthant counts, and refinement enumeration all have a concrete
combinatorial object to work from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .errors import (
    EnumerationTooLarge,
    IncompatiblePair,
    LeafCountMismatch,
    NegativeOrEven,
    TooManySplits,
)
from .splits import Permutation, Split, apply_permutation, are_compatible, check_leaf_count, full_mask, leaves_of, make_split

DEFAULT_ENUMERATION_CAP = 10**7


def double_factorial(m: int) -> int:
    """m!! for odd m >= -1, with (-1)!! = 1 (empty product)."""
    if m < -1 or m % 2 == 0:
        raise NegativeOrEven(f"double factorial needs odd m >= -1, got {m}")
    return prod(range(m, 0, -2))


@dataclass(frozen=True)
class Topology:
    """A face of tree space: n leaves plus a pairwise-compatible split set."""

    n: int
    splits: frozenset[Split] = field(default_factory=frozenset)

    def __post_init__(self):
        check_leaf_count(self.n)
        for s in self.splits:
            if s.n != self.n:
                raise LeafCountMismatch(f"split {s} in topology over n={self.n}")
        if len(self.splits) > self.n - 3:
            raise TooManySplits(
                f"{len(self.splits)} splits exceed n-3 = {self.n - 3}"
            )
        ordered = sorted(self.splits)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1 :]:
                if not are_compatible(a, b):
                    raise IncompatiblePair(a, b)

    @property
    def p(self) -> int:
        """Number of internal edges (positive-length splits)."""
        return len(self.splits)

    @property
    def sorted_splits(self) -> tuple[Split, ...]:
        return tuple(sorted(self.splits))

    def permute(self, sigma: Permutation) -> "Topology":
        """Relabel all leaves through sigma."""
        return Topology(self.n, frozenset(apply_permutation(sigma, s) for s in self.splits))

    def refines(self, other: "Topology") -> bool:
        """True if this topology's split set contains the other's."""
        return self.n == other.n and other.splits <= self.splits

    def to_json(self) -> dict:
        return {"n": self.n, "splits": [list(s.side) for s in self.sorted_splits]}

    @classmethod
    def from_json(cls, obj: dict) -> "Topology":
        n = obj["n"]
        return cls(n, frozenset(make_split(side, n) for side in obj["splits"]))

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, s.side)) + "}" for s in self.sorted_splits)
        return f"Topology(n={self.n}, splits=[{inner}])"


def make_topology(splits, n: int) -> Topology:
    """Validate a split collection and wrap it as a Topology.

    Raises IncompatiblePair naming the first violating pair (in canonical
    split order) and TooManySplits when the count exceeds n-3.
    """
    return Topology(n, frozenset(splits))


def is_binary(t: Topology) -> bool:
    """A topology is binary when it has the full complement of n-3 splits."""
    return t.p == t.n - 3


@dataclass
class InternalTree:
    """The unique unrooted tree realizing a topology.

    Internal nodes are indexed 0..p; each leaf attaches to exactly one
    internal node and each split labels exactly one internal edge. Treat
    instances as immutable once built.
    """

    n: int
    node_leaves: list[int]            # per node, bitmask of directly attached leaves
    adjacency: list[dict[int, Split]]  # per node, neighbor -> split on that edge

    @property
    def node_count(self) -> int:
        return len(self.node_leaves)

    @property
    def edges(self) -> list[tuple[int, int, Split]]:
        out = []
        for u, nbrs in enumerate(self.adjacency):
            for v, s in nbrs.items():
                if u < v:
                    out.append((u, v, s))
        return out

    @property
    def leaf_node(self) -> dict[int, int]:
        attach = {}
        for u, mask in enumerate(self.node_leaves):
            for leaf in leaves_of(mask):
                attach[leaf] = u
        return attach

    def degree(self, u: int) -> int:
        return self.node_leaves[u].bit_count() + len(self.adjacency[u])

    def degrees(self) -> tuple[int, ...]:
        """Node degrees, sorted descending."""
        return tuple(sorted((self.degree(u) for u in range(self.node_count)), reverse=True))

    def side_behind(self, u: int, v: int) -> int:
        """Leaf bitmask of the component containing v after cutting edge (u, v).

        Recomputed by traversal, independently of the stored edge labels, so
        round-trip tests exercise the actual tree shape.
        """
        seen = {v}
        stack = [v]
        mask = 0
        while stack:
            w = stack.pop()
            mask |= self.node_leaves[w]
            for x in self.adjacency[w]:
                if x not in seen and not (w == v and x == u):
                    seen.add(x)
                    stack.append(x)
        return mask

    def splits_by_cutting(self) -> set[Split]:
        """Recompute the split of every internal edge from scratch."""
        out = set()
        for u, v, _ in self.edges:
            out.add(make_split(leaves_of(self.side_behind(u, v)), self.n))
        return out

    def to_dot(self) -> str:
        """Graphviz rendering: internal nodes as points, leaves as plain labels."""
        lines = ["graph internal_tree {"]
        for u in range(self.node_count):
            lines.append(f'  n{u} [shape=point];')
        for leaf in range(1, self.n + 1):
            lines.append(f'  leaf{leaf} [shape=none, label="{leaf}"];')
        for u, v, s in sorted(self.edges):
            label = ",".join(map(str, s.side))
            lines.append(f'  n{u} -- n{v} [label="{{{label}}}"];')
        for leaf, u in sorted(self.leaf_node.items()):
            lines.append(f"  leaf{leaf} -- n{u};")
        lines.append("}")
        return "\n".join(lines)


def reconstruct_tree(t: Topology) -> InternalTree:
    """Build the unique tree whose internal-edge splits equal t.splits.

    Starts from the star tree and inserts splits in increasing side size.
    Each insertion pulls the split's side off a single node: compatibility
    guarantees exactly one node has no edge straddling the side.
    """
    n = t.n
    node_leaves = [full_mask(n)]
    adjacency: list[dict[int, Split]] = [{}]
    through: dict[tuple[int, int], int] = {}

    for s in sorted(t.splits):
        side, comp = s.mask, s.complement_mask
        host = None
        for u in range(len(node_leaves)):
            if all(m & side == 0 or m & comp == 0 for m in
                   (through[(u, v)] for v in adjacency[u])):
                if host is not None:
                    raise AssertionError(f"split {s} attachable at two nodes")
                host = u
        if host is None:
            raise AssertionError(f"no attachment node for split {s}")

        w = len(node_leaves)
        node_leaves.append(node_leaves[host] & side)
        node_leaves[host] &= comp
        adjacency.append({})
        moved = [v for v in adjacency[host] if through[(host, v)] & side]
        for v in moved:
            edge_split = adjacency[host].pop(v)
            adjacency[v].pop(host)
            adjacency[w][v] = edge_split
            adjacency[v][w] = edge_split
            through[(w, v)] = through.pop((host, v))
            through[(v, w)] = through.pop((v, host))
        adjacency[host][w] = s
        adjacency[w][host] = s
        through[(host, w)] = side
        through[(w, host)] = comp

    tree = InternalTree(n, node_leaves, adjacency)
    if any(tree.degree(u) < 3 for u in range(tree.node_count)):
        raise AssertionError("reconstruction produced a degree < 3 node")
    return tree


def degree_sequence(t: Topology) -> tuple[int, ...]:
    """Internal-node degrees of the realized tree, sorted descending."""
    return reconstruct_tree(t).degrees()


def count_refining_orthants(t: Topology) -> int:
    """Number of binary topologies refining t: the product of (2d-5)!! over
    internal node degrees."""
    return prod(double_factorial(2 * d - 5) for d in degree_sequence(t))


@lru_cache(maxsize=8)
def _all_binary_topologies(n: int) -> tuple[Topology, ...]:
    """Every binary topology on n leaves, generated by leaf insertion.

    Leaf k is attached to each edge of every tree on k-1 leaves; this
    realizes the classical bijection, so no deduplication is needed.
    """
    check_leaf_count(n)

    def splits_of(edge_list):
        # adjacency over leaves 1..n and internal node ids > n
        adj: dict[int, list[int]] = {}
        for u, v in edge_list:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        splits = []
        for u, v in edge_list:
            if u <= n or v <= n:
                continue
            seen = {u, v}
            stack = [v]
            mask = 0
            while stack:
                w = stack.pop()
                if w <= n:
                    mask |= 1 << (w - 1)
                    continue
                for x in adj[w]:
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
            splits.append(make_split(leaves_of(mask), n))
        return splits

    def grow(k, edges):
        if k > n:
            yield edges
            return
        w = n + k - 2  # internal node ids n+2 .. 2n-2; n+1 is the seed node
        for i in range(len(edges)):
            u, v = edges[i]
            yield from grow(k + 1, edges[:i] + edges[i + 1:] + [(u, w), (v, w), (k, w)])

    seed = [(1, n + 1), (2, n + 1), (3, n + 1)]
    return tuple(Topology(n, frozenset(splits_of(e))) for e in grow(4, seed))


def enumerate_binary_topologies(n: int, cap: int = DEFAULT_ENUMERATION_CAP):
    """Iterate all (2n-5)!! binary topologies on n leaves, no repeats.

    Raises EnumerationTooLarge up front when the census exceeds the cap.
    """
    check_leaf_count(n)
    expected = double_factorial(2 * n - 5)
    if expected > cap:
        raise EnumerationTooLarge(f"(2n-5)!! = {expected} exceeds cap {cap}")
    return iter(_all_binary_topologies(n))


def enumerate_binary_refinements(t: Topology, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Topology]:
    """All binary topologies whose split sets contain t.splits.

    Exhaustive filter over the full binary census; serves as the brute-force
    oracle for count_refining_orthants.
    """
    if is_binary(t):
        return [t]
    return [b for b in enumerate_binary_topologies(t.n, cap) if t.splits <= b.splits]
