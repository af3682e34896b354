"""Canonical leaf-set bipartitions (splits) and their compatibility test.

A split is the bipartition of the leaf set {1, ..., n} induced by cutting an
internal edge of an unrooted tree. Only one side is stored, as a bitmask,
canonicalized to the smaller side (ties at n/2 go to the side containing
leaf 1). Everything in this module is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator

from .errors import LeafCountMismatch, LeafOutOfRange, SubsetTooSmall

MIN_LEAVES = 3
MAX_LEAVES = 64


def check_leaf_count(n: int) -> int:
    """Validate a leaf count; splits exist only for 3 <= n <= 64."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"leaf count must be an integer, got {n!r}")
    if n < MIN_LEAVES or n > MAX_LEAVES:
        raise ValueError(f"leaf count must be in [{MIN_LEAVES}, {MAX_LEAVES}], got {n}")
    return n


def full_mask(n: int) -> int:
    """Bitmask with one bit per leaf, leaf i on bit i-1."""
    return (1 << n) - 1


def mask_of(leaves: Iterable[int], n: int) -> int:
    """Bitmask of a leaf subset, validating every element against {1, ..., n}."""
    mask = 0
    for leaf in leaves:
        if not isinstance(leaf, int) or isinstance(leaf, bool) or leaf < 1 or leaf > n:
            raise LeafOutOfRange(f"leaf {leaf!r} not in 1..{n}")
        mask |= 1 << (leaf - 1)
    return mask


def leaves_of(mask: int) -> tuple[int, ...]:
    """Sorted leaf labels encoded in a bitmask."""
    leaves = []
    i = 1
    while mask:
        if mask & 1:
            leaves.append(i)
        mask >>= 1
        i += 1
    return tuple(leaves)


@dataclass(frozen=True)
class Split:
    """One side of a leaf bipartition in canonical form.

    Construct via make_split unless the mask is already canonical. Splits
    sort by (n, side size, lexicographic side), the enumeration order used
    throughout the package.
    """

    n: int
    mask: int

    def __post_init__(self):
        check_leaf_count(self.n)
        if self.mask & ~full_mask(self.n):
            raise LeafOutOfRange(f"mask {self.mask:#x} has bits outside 1..{self.n}")
        size = self.mask.bit_count()
        if size < 2 or 2 * size > self.n:
            raise SubsetTooSmall(
                f"canonical side must satisfy 2 <= size <= n/2, got size {size} for n={self.n}"
            )
        if 2 * size == self.n and not (self.mask & 1):
            raise SubsetTooSmall(
                "half-size canonical side must contain leaf 1; use make_split"
            )

    @property
    def side(self) -> tuple[int, ...]:
        """The canonical side as sorted leaf labels."""
        return leaves_of(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def complement_mask(self) -> int:
        return full_mask(self.n) ^ self.mask

    @property
    def complement(self) -> tuple[int, ...]:
        return leaves_of(self.complement_mask)

    def contains(self, leaf: int) -> bool:
        """True if the canonical side contains the leaf."""
        return bool(self.mask >> (leaf - 1) & 1)

    def __lt__(self, other: "Split") -> bool:
        return (self.n, self.size, self.side) < (other.n, other.size, other.side)

    def to_json(self) -> dict:
        return {"n": self.n, "side": list(self.side)}

    @classmethod
    def from_json(cls, obj: dict) -> "Split":
        return make_split(obj["side"], obj["n"])

    def __repr__(self) -> str:
        return f"Split({{{','.join(map(str, self.side))}}}, n={self.n})"


def make_split(subset: Iterable[int], n: int) -> Split:
    """Build the canonical Split for a leaf subset of {1, ..., n}.

    The stored side is the smaller of subset/complement; on a size tie the
    side containing leaf 1 wins. Raises SubsetTooSmall unless both sides
    have at least two leaves.
    """
    check_leaf_count(n)
    mask = mask_of(subset, n)
    size = mask.bit_count()
    if size < 2 or n - size < 2:
        raise SubsetTooSmall(
            f"both sides need >= 2 leaves, got sizes {size} and {n - size} for n={n}"
        )
    if 2 * size > n or (2 * size == n and not (mask & 1)):
        mask = full_mask(n) ^ mask
    return Split(n, mask)


def are_compatible(a: Split, b: Split) -> bool:
    """True if the two splits can appear together in one tree.

    Tests the defining condition directly: at least one of the four
    pairwise intersections of sides must be empty.
    """
    if a.n != b.n:
        raise LeafCountMismatch(f"splits over n={a.n} and n={b.n}")
    am, bm = a.mask, b.mask
    ac, bc = a.complement_mask, b.complement_mask
    return not (am & bm) or not (am & bc) or not (ac & bm) or not (ac & bc)


def compatible_disjoint_or_nested(a: Split, b: Split) -> bool:
    """Compatibility via the reduced form: canonical sides ordered by size
    are either disjoint or nested. Kept as an independent cross-check of
    are_compatible.
    """
    if a.n != b.n:
        raise LeafCountMismatch(f"splits over n={a.n} and n={b.n}")
    if a.size > b.size:
        a, b = b, a
    am, bm = a.mask, b.mask
    return not (am & bm) or (am & bm) == am


def enumerate_splits(n: int) -> list[Split]:
    """All canonical splits on n leaves, ordered by (size, lexicographic side).

    This is the vertex set of the link graph; its length is 2^(n-1) - n - 1.
    """
    check_leaf_count(n)
    out: list[Split] = []
    for k in range(2, n // 2 + 1):
        if 2 * k < n:
            for side in combinations(range(1, n + 1), k):
                out.append(Split(n, mask_of(side, n)))
        else:
            # half-size splits: exactly one representative, the side with leaf 1
            for rest in combinations(range(2, n + 1), k - 1):
                out.append(Split(n, mask_of((1,) + rest, n)))
    out.sort()
    return out


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., n}, stored as the image tuple (images[i-1] = sigma(i))."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, leaf: int) -> int:
        return self.images[leaf - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        if self.n != other.n:
            raise LeafCountMismatch(f"permutations of {self.n} and {other.n} leaves")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Iterable[int]) -> "Permutation":
        """Permutation of 1..n from disjoint cycles, e.g. from_cycles(6, (1, 6))."""
        images = list(range(1, n + 1))
        for cycle in cycles:
            cycle = tuple(cycle)
            for src, dst in zip(cycle, cycle[1:] + cycle[:1]):
                images[src - 1] = dst
        return cls(tuple(images))


def all_permutations(n: int) -> Iterator[Permutation]:
    """Every permutation of {1, ..., n}, in itertools order."""
    for images in permutations(range(1, n + 1)):
        yield Permutation(images)


def apply_permutation(sigma: Permutation, s: Split) -> Split:
    """Relabel a split's leaves through sigma and re-canonicalize."""
    if sigma.n != s.n:
        raise LeafCountMismatch(f"permutation of {sigma.n} leaves vs split on {s.n}")
    return make_split([sigma(leaf) for leaf in s.side], s.n)
