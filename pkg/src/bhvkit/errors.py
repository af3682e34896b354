"""Exception hierarchy shared by all bhvkit modules.

Every error raised by the library derives from BhvError, so callers (and the
CLI exit-code mapping) can catch one base class.
"""


class BhvError(Exception):
    """Base class for all bhvkit errors."""


# ---------------------------------------------------------------------------
# splits
# ---------------------------------------------------------------------------

class SubsetTooSmall(BhvError):
    """A split side or its complement has fewer than 2 leaves."""


class LeafOutOfRange(BhvError):
    """A leaf label lies outside {1, ..., n}."""


class LeafCountMismatch(BhvError):
    """Two values built over different leaf counts were combined."""


# ---------------------------------------------------------------------------
# topology
# ---------------------------------------------------------------------------

class IncompatiblePair(BhvError):
    """A split set contains two splits that cannot coexist in one tree."""

    def __init__(self, a, b):
        self.a = a
        self.b = b
        super().__init__(f"incompatible splits {a} and {b}")


class TooManySplits(BhvError):
    """More than n-3 splits supplied for a topology on n leaves."""


class EnumerationTooLarge(BhvError):
    """A requested enumeration exceeds the configured item cap."""


class NegativeOrEven(BhvError):
    """Double factorial argument must be odd and >= -1."""


# ---------------------------------------------------------------------------
# link graph
# ---------------------------------------------------------------------------

class KOutOfRange(BhvError):
    """Partition size k outside the valid range for this query."""


class TooLarge(BhvError):
    """Input exceeds the size this desk-scale routine supports."""


class SearchBudgetExceeded(BhvError):
    """A backtracking search exhausted its node budget."""


class VertexNotFound(BhvError):
    """Queried split is not a vertex of the graph."""


# ---------------------------------------------------------------------------
# measure
# ---------------------------------------------------------------------------

class NonpositiveRadius(BhvError):
    """Ball radius must be strictly positive."""


class EpsilonTooLarge(BhvError):
    """Radius is not smaller than the shortest edge, so the closed-form
    ball volume does not apply."""

    def __init__(self, min_edge):
        self.min_edge = min_edge
        super().__init__(
            f"epsilon must be smaller than the minimum edge length {min_edge}"
        )


class POutOfRange(BhvError):
    """Edge count p outside 0 <= p <= n-3."""


# ---------------------------------------------------------------------------
# newick
# ---------------------------------------------------------------------------

class NewickSyntaxError(BhvError):
    """Malformed Newick input; carries the 0-based offset of the problem."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at offset {position})")


class DuplicateLeaf(BhvError):
    """The same leaf name appears twice in one tree."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate leaf name {name!r}")


class DegreeTwoInternal(BhvError):
    """A non-root internal node has a single child, which no unrooted
    tree can produce."""


class NegativeLength(BhvError):
    """Branch lengths must be nonnegative."""


class UnknownLeafName(BhvError):
    """A leaf name could not be resolved to an index in {1, ..., n}."""
