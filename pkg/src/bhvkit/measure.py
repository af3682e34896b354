"""Points of tree space with positive edge lengths, small-ball volumes, and
distance bounds.

The volume of an epsilon-ball around a point depends only on how many
binary orthants contain the point's face and on the face codimension; the
coefficient s_F / 2^(n-3-p) is kept as an exact Fraction so equality and
dominance claims can be tested without float noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EpsilonTooLarge, LeafCountMismatch, NonpositiveRadius, POutOfRange
from .splits import (
    Permutation,
    Split,
    apply_permutation,
    are_compatible,
    check_leaf_count,
    make_split,
)
from .topology import Topology, count_refining_orthants, double_factorial, make_topology


@dataclass
class TreePoint:
    """A topology with a positive length per split.

    Leaf-edge lengths may ride along as metadata but never enter coordinates,
    norms, or distances. Treat instances as immutable.
    """

    topology: Topology
    lengths: dict[Split, float] = field(default_factory=dict)
    leaf_lengths: dict[int, float] | None = None

    def __post_init__(self):
        if set(self.lengths) != set(self.topology.splits):
            raise ValueError("lengths must be keyed by exactly the topology's splits")
        for s, w in self.lengths.items():
            if not w > 0:
                raise ValueError(f"edge {s} has nonpositive length {w}; drop it from the topology")
        if self.leaf_lengths is not None:
            for leaf in self.leaf_lengths:
                if not 1 <= leaf <= self.n:
                    raise ValueError(f"leaf {leaf} not in 1..{self.n}")

    @property
    def n(self) -> int:
        return self.topology.n

    @property
    def p(self) -> int:
        return self.topology.p

    @property
    def norm(self) -> float:
        """Euclidean norm of the internal edge-length vector."""
        return math.sqrt(sum(self.lengths[s] ** 2 for s in self.topology.sorted_splits))

    @property
    def min_edge(self) -> float | None:
        """Shortest internal edge, or None at the cone point."""
        if not self.lengths:
            return None
        return min(self.lengths.values())

    def permute(self, sigma: Permutation) -> "TreePoint":
        """Relabel leaves; lengths follow their splits."""
        new_lengths = {apply_permutation(sigma, s): w for s, w in self.lengths.items()}
        new_leaf = (
            {sigma(leaf): w for leaf, w in self.leaf_lengths.items()}
            if self.leaf_lengths is not None
            else None
        )
        return TreePoint(self.topology.permute(sigma), new_lengths, new_leaf)

    def to_json(self) -> dict:
        obj = {
            "n": self.n,
            "edges": [
                {"side": list(s.side), "length": self.lengths[s]}
                for s in self.topology.sorted_splits
            ],
        }
        if self.leaf_lengths:
            obj["leaf_lengths"] = {str(k): v for k, v in sorted(self.leaf_lengths.items())}
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "TreePoint":
        n = obj["n"]
        lengths = {}
        for e in obj["edges"]:
            lengths[make_split(e["side"], n)] = float(e["length"])
        leaf = obj.get("leaf_lengths")
        if leaf is not None:
            leaf = {int(k): float(v) for k, v in leaf.items()}
        return cls(make_topology(lengths.keys(), n), lengths, leaf)


def cone_point(n: int) -> TreePoint:
    """The star tree with no internal edges, common to every orthant."""
    return TreePoint(Topology(n), {})


def is_cone_point(x: TreePoint) -> bool:
    return x.p == 0


@dataclass(frozen=True)
class BallVolume:
    """Volume of a small ball, with the exact rational coefficient that
    multiplies the Euclidean ball volume A_(n-3)(eps)."""

    value: float
    n: int
    p: int
    s_f: int
    epsilon: float
    coefficient: Fraction


def euclidean_ball_volume(m: int, eps: float) -> float:
    """Volume of a radius-eps ball in R^m: pi^(m/2) eps^m / Gamma(m/2 + 1)."""
    if m < 0:
        raise ValueError(f"dimension must be >= 0, got {m}")
    if not eps > 0:
        raise NonpositiveRadius(f"radius must be positive, got {eps}")
    return math.pi ** (m / 2) * eps**m / math.gamma(m / 2 + 1)


def ball_volume(x: TreePoint, eps: float) -> BallVolume:
    """Exact small-ball volume: s_F / 2^(n-3-p) times A_(n-3)(eps).

    Only valid when eps is smaller than every edge of x, so the ball meets
    no lower-dimensional face; otherwise EpsilonTooLarge is raised rather
    than returning a silently wrong number.
    """
    if not eps > 0:
        raise NonpositiveRadius(f"radius must be positive, got {eps}")
    min_edge = x.min_edge
    if min_edge is not None and eps >= min_edge:
        raise EpsilonTooLarge(min_edge)
    n, p = x.n, x.p
    s_f = count_refining_orthants(x.topology)
    coefficient = Fraction(s_f, 2 ** (n - 3 - p))
    value = float(coefficient) * euclidean_ball_volume(n - 3, eps)
    return BallVolume(value, n, p, s_f, eps, coefficient)


def ball_volume_bounds(n: int, p: int, eps: float) -> tuple[float, float]:
    """Dimension-only bounds on the small-ball volume.

    Lower bound A_(n-3)(eps) is achieved exactly by binary points; the upper
    bound (2n-2p-5)!! 2^p / 2^(n-3) A_(n-3)(eps) comes from the star-heaviest
    degree sequence.
    """
    check_leaf_count(n)
    if p < 0 or p > n - 3:
        raise POutOfRange(f"need 0 <= p <= n-3, got p={p} for n={n}")
    a = euclidean_ball_volume(n - 3, eps)
    upper_coeff = Fraction(double_factorial(2 * n - 2 * p - 5) * 2**p, 2 ** (n - 3))
    return a, float(upper_coeff) * a


def same_orthant_distance(a: TreePoint, b: TreePoint) -> float | None:
    """Euclidean distance when both points fit in one closed orthant.

    Returns None when the union of their splits is not pairwise compatible;
    absent splits contribute coordinate 0.
    """
    if a.n != b.n:
        raise LeafCountMismatch(f"points over n={a.n} and n={b.n}")
    union = sorted(set(a.topology.splits) | set(b.topology.splits))
    for i, s in enumerate(union):
        for t in union[i + 1 :]:
            if not are_compatible(s, t):
                return None
    return math.sqrt(
        sum((a.lengths.get(s, 0.0) - b.lengths.get(s, 0.0)) ** 2 for s in union)
    )


def distance_upper_bound(a: TreePoint, b: TreePoint) -> float:
    """Upper bound on geodesic distance: the straight segment when the two
    points share an orthant (where it is exact), else the path through the
    cone point of length ||a|| + ||b||."""
    same = same_orthant_distance(a, b)
    cone = a.norm + b.norm
    if same is None:
        return cone
    return min(same, cone)
