"""Exception hierarchy.

Capacity errors (anything a bigger machine would fix) derive from CapExceeded so
the CLI can map them to a single exit code. Input errors derive from SpecError.
"""


class PqError(Exception):
    """Base class for all library errors."""


class CapExceeded(PqError):
    """An enumeration outgrew a configured cap (element, poset or simplex count)."""


class PosetTooLarge(CapExceeded):
    pass


class MatrixTooLarge(CapExceeded):
    """A chain complex exceeded the simplex cap before reduction started."""


class SpecError(PqError, ValueError):
    """Problems with a group spec string or its parameters."""


class UnsupportedSpec(SpecError):
    pass


class ActionTooLarge(SpecError):
    """The requested permutation action has more points than the degree cap."""


class NotAMatrixGroup(SpecError):
    """An extension needing matrix structure was applied to a non-matrix base."""


class ActionNotDoubled(SpecError):
    """A graph extension needs the points+hyperplanes action and n >= 3."""


class UnknownName(SpecError):
    """sub(name) with a name the catalog does not define for this group."""


class NoTaggedCandidate(PqError):
    """No designated subgroup carries a Lie tag in the requested characteristic."""


class MultipleCandidates(PqError):
    """More than one designated subgroup qualifies as the Lie core."""


class TagMismatch(PqError):
    """A computed invariant disagrees with the catalog tag."""


class GdfMissing(PqError):
    """An operation needs the diagonal-field subgroup and none was recorded."""


class RankTwoOuter(PqError):
    """Bucket classification is undefined for outer elementary abelians of rank 2."""
