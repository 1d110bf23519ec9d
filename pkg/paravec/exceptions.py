"""Paravec Exceptions"""


class ParavecError(Exception):
    """Base class for every error raised by paravec"""

    def __init__(self, message: str = "") -> None:
        super().__init__(message)
        self.message = message


class DimensionMismatch(ParavecError):
    """The sizes of the problem data do not agree"""


class ConeNotPointed(ParavecError):
    """The ordering cone contains a line"""


class ConeNotSolid(ParavecError):
    """The ordering cone has an empty interior"""


class InteriorPointInvalid(ParavecError):
    """The given interior point is not in the interior of the ordering cone"""


class DegenerateInteriorPoint(ParavecError):
    """No interior point with a nonzero last coordinate could be found"""


class NumericalError(ParavecError):
    """Base class for floating point failures"""


class SingularMatrix(NumericalError):
    """A factorization met a pivot that is numerically zero"""


class SingularBasis(NumericalError):
    """The columns chosen as a basis do not form a nonsingular matrix"""


class NumericalBreakdown(NumericalError):
    """An LP could not be driven to a reliable answer"""


class PreconditionViolated(ParavecError):
    """An operation was called on data that does not meet its precondition"""


class InfeasibleProblem(ParavecError):
    """The feasible set {x : Ax <= b, x >= 0} is empty"""


class NoSolution(ParavecError):
    """The lower image has no vertex, so the problem has no solution"""


class ScalarUnbounded(ParavecError):
    """The weighted sum scalarization is unbounded for the given weight"""


class IterationLimitExceeded(ParavecError):
    """The exploration materialized more dictionaries than allowed"""


class ParseError(ParavecError):
    """A problem or solution document could not be read"""


class UnsupportedDimension(ParavecError):
    """The requested export is not available for this number of objectives"""


class TooLarge(ParavecError):
    """The instance is too large for exhaustive enumeration"""


class UnboundedParameterSet(ParavecError):
    """Lambda has no bounding box, so it cannot be gridded or sampled"""
