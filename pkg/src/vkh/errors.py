"""Exception types raised by vkh."""


class VkhError(Exception):
    """Base class for every error raised by this package."""


class DiagramError(VkhError):
    """Input describes no valid diagram."""


class MalformedToken(DiagramError):
    pass


class LabelCountMismatch(DiagramError):
    pass


class SignMismatch(DiagramError):
    pass


class SchemaError(DiagramError):
    pass


class DanglingHalfEdge(DiagramError):
    pass


class DuplicateSocket(DiagramError):
    pass


class SignInconsistent(DiagramError):
    """Declared crossing signs admit no coherent orientation."""


class UnknownCrossing(VkhError):
    pass


class PatternNotFound(VkhError):
    pass


class InvalidPath(VkhError):
    pass


class StateLengthMismatch(VkhError):
    pass


class ResourceLimit(VkhError):
    """A computation would enumerate more states than the configured budget."""


class NotDivisible(VkhError):
    pass


class OneOneEdge(VkhError):
    """Rational coefficients requested on a cube containing a 1->1 edge."""


class ArityMismatch(VkhError):
    pass


class NoRoot(VkhError):
    """A Poincare polynomial has no tensor square root."""
