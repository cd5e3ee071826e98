"""Exception hierarchy shared by all ncdr modules."""


class NcdrError(Exception):
    """Base class for domain errors (CLI maps these to exit code 1)."""


class ZeroParameter(NcdrError):
    """Quaternion algebra parameters must satisfy a*b != 0."""


class AlgebraMismatch(NcdrError):
    """Operands belong to different algebras."""


class DimensionMismatch(NcdrError):
    """Vector/matrix shapes do not line up."""


class WrongDimension(NcdrError):
    """Operation requires an algebra of a specific dimension."""


class NotInvertible(NcdrError):
    """Element has zero norm and no inverse."""


class Singular(NcdrError):
    """Matrix has no inverse."""


class NotQuaternionBlock(NcdrError):
    """A 4x4 real block does not match the left-multiplication pattern."""


class NotRepresentable(NcdrError):
    """Coordinate matrix has no standard-component representation."""


class DegreeTooLarge(NcdrError):
    """Enumeration-based check beyond its supported degree."""


class NonConvergent(NcdrError):
    """Numeric derivative extrapolation did not settle within tolerance."""


class ZeroDirection(NcdrError):
    """Directional D*/\\*D derivative undefined along a null direction."""


class IndexOutOfRange(NcdrError):
    """Argument slot index outside the map's arity."""


class UnboundSymbol(NcdrError):
    """Word evaluation hit a variable with no binding."""


class RangeError(NcdrError):
    """Integer argument outside the supported range."""


class NoSolution(NcdrError):
    """Differential equation has no solution (symmetry obstruction)."""


class OrderExceeded(NcdrError):
    """Taylor recursion did not terminate within the requested order."""


class ParseError(NcdrError):
    """Malformed element or polynomial literal."""
