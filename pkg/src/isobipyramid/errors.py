"""Exception hierarchy.

Everything raised on purpose by the package derives from
:class:`BipyramidError`, so callers (the CLI in particular) can separate
bad input from bugs.
"""


class BipyramidError(Exception):
    """Base class for all package errors."""


class DomainError(BipyramidError, ValueError):
    """A parameter lies outside the interval where a formula is defined."""


class BoundsError(DomainError):
    """Sweep bounds are out of order or outside the parameter interval."""


class DegenerateError(BipyramidError, ValueError):
    """A construction or quotient collapses at an interval endpoint."""


class ConstructionError(BipyramidError):
    """Realized coordinates do not reproduce the prescribed edge lengths."""


class ExistenceError(BipyramidError, ValueError):
    """The triangle inequality for A'C'E' fails, so q(t) does not exist."""


class MalformedMeshError(BipyramidError, ValueError):
    """Mesh data is structurally invalid."""


class MissingMarkerError(MalformedMeshError):
    """The midpoint marker (C or C') required by an operation is absent."""


class OpenMeshError(MalformedMeshError):
    """Some edge is not shared by exactly two faces."""


class DegenerateFaceError(MalformedMeshError):
    """A face has (near) zero area."""


class RefinementError(BipyramidError):
    """A marker is not the midpoint of any mesh edge."""


class GluingMismatchError(BipyramidError):
    """The refined triangulations of two surfaces are combinatorially different."""


class UnderflowError(BipyramidError):
    """The solver would have to go below its configured parameter floor."""


class VerificationError(BipyramidError):
    """A produced witness failed one of the post-checks."""
