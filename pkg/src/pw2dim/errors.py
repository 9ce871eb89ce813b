"""Exception hierarchy shared by every module of the package."""


class Pw2DimError(Exception):
    """Base class for all errors raised by pw2dim."""


class CycleError(Pw2DimError):
    """The transitive closure of a relation is not antisymmetric."""


class UnknownElement(Pw2DimError, KeyError):
    """An element or vertex id that is not part of the structure."""

    def __str__(self):
        return Exception.__str__(self)


class NotAnExtension(Pw2DimError):
    """A sequence is not a linear extension of the poset it is checked against."""


class NotARealizer(Pw2DimError):
    """A family of linear extensions fails to realize a poset."""


class SizeCapExceeded(Pw2DimError):
    """Input is larger than an exponential algorithm is allowed to handle."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class NotBiconnected(Pw2DimError):
    pass


class NotFMinorFree(Pw2DimError):
    """Raised with the name of the obstruction found and its minor embedding."""

    def __init__(self, pattern, embedding, message=None):
        super().__init__(message or f"graph contains {pattern} as a minor")
        self.pattern = pattern
        self.embedding = embedding


class NoCanonicalCycle(NotFMinorFree):
    pass


class NotOuterplanar(Pw2DimError):
    pass


class InconsistentOrientation(Pw2DimError):
    pass


class UnexpectedCycle(Pw2DimError):
    """The digraph D' used to build the bad-diamond extension has a directed cycle."""


class CycleInExtension(Pw2DimError):
    """Adding beak comparabilities produced a cycle."""


class GenerationFailed(Pw2DimError):
    pass


class TheoremViolation(Pw2DimError):
    """A check that a proven statement guarantees has failed; never expected."""
