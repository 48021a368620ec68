"""Exception types shared across the package."""


class PlanarGirthError(Exception):
    """Base class for all errors raised by this package."""


class EmbeddingInvalid(PlanarGirthError):
    """Rotation system does not describe a planar embedding."""


class DanglingReference(PlanarGirthError):
    """An arc or vertex id points outside the declared index range."""


class NotTriangulated(PlanarGirthError):
    """Operation requires a fully triangulated embedding."""


class InvalidCycle(PlanarGirthError):
    """Vertex sequence is not a simple embedded cycle of the graph."""


class BoundaryNotOnOneFace(PlanarGirthError):
    """Piece boundary vertices do not share a common face."""


class BoundaryMismatch(PlanarGirthError):
    """Two boundary matrices disagree on the boundary vertex order."""


class NegativeReducedCost(PlanarGirthError):
    """A reduced edge cost came out negative; upstream distances are wrong."""


class InfeasiblePrices(PlanarGirthError):
    """A price function fails the feasibility inequality on some arc."""


class Unreachable(PlanarGirthError):
    """Path query between vertices with no connecting path."""


class PathWeightMismatch(PlanarGirthError):
    """An expanded path's weight disagrees with the distance matrix entry."""


class MongeViolation(PlanarGirthError):
    """A staircase block fails the quadrangle inequality."""


class InternalInconsistency(PlanarGirthError):
    """Two redundant computations disagree; indicates a bug, not bad input."""


class CapExceeded(PlanarGirthError):
    """Instance is larger than the brute-force size cap."""


class InvalidSpec(PlanarGirthError):
    """Generator parameters are out of range or inconsistent."""
