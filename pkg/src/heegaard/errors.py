"""Exception types raised by the library."""


class HeegaardError(ValueError):
    """Base class for every error raised on invalid input."""


class ParseError(HeegaardError):
    def __init__(self, message, line=None):
        self.line = line
        self.reason = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DuplicateCrossing(HeegaardError):
    pass


class MissingCrossing(HeegaardError):
    pass


class InvalidMatching(HeegaardError):
    pass


class EulerCheckFailed(HeegaardError):
    pass


class LayoutError(HeegaardError):
    """Turnings that do not describe a planar drawing of the cut-open surface."""


class SingularIntersection(HeegaardError):
    """The intersection matrix is singular: not a rational homology sphere."""


class CrossingNotOnCurve(HeegaardError):
    pass


class NoPerfectMatching(HeegaardError):
    pass


class NotACycle(HeegaardError):
    pass


class InconsistentPath(HeegaardError):
    pass


class InvalidSite(HeegaardError):
    pass


class SymplecticViolation(HeegaardError):
    pass
