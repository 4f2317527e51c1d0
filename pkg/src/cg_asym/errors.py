"""Exception types raised by cg_asym."""


class CGError(Exception):
    """Base class for all library errors."""


class DomainError(CGError, ValueError):
    """Parameters or evaluation points outside the admissible region."""


class RangeError(DomainError):
    """A level label (n, S, ...) that the representation does not contain."""


class ParityError(DomainError):
    """Half-integer parity mismatch between spins and projections."""


class ConvergenceError(CGError, RuntimeError):
    pass


class NoBracketError(CGError, RuntimeError):
    """F' has no sign change on the interior of the grid."""


class NegativeCurvatureError(CGError, RuntimeError):
    """SHA parameters A or B are not positive at the centroid."""


class ContextMismatchError(CGError, ValueError):
    pass


class EnumerationCapError(CGError, ValueError):
    pass
