"""Exception hierarchy.

Every error raised on purpose by the package derives from ``OpshiftError`` so
the CLI can map the whole family onto exit codes.
"""


class OpshiftError(Exception):
    pass


class ConfigError(OpshiftError, ValueError):
    """Malformed measure or run configuration."""


class NumericalError(OpshiftError, ArithmeticError):
    """A computation could not be carried out to the requested accuracy."""


# measure
class MeasureError(OpshiftError, ValueError):
    pass


class DegreeExceeded(MeasureError):
    pass


class EmptyMeasure(MeasureError):
    pass


class BadRadii(MeasureError):
    pass


class NegativeWeight(MeasureError):
    pass


class NonpositiveMass(MeasureError):
    pass


class OutsideDomain(MeasureError):
    pass


class NoNodes(MeasureError, TypeError):
    """Closed-form measure asked for a node/weight representation."""


# arnoldi / hessenberg
class RankDeficient(NumericalError):
    pass


class SingularShift(NumericalError):
    pass


class WindowExceeded(OpshiftError, IndexError):
    pass


class IndexOutOfRange(OpshiftError, IndexError):
    pass


class BadPath(OpshiftError, ValueError):
    pass


class InsufficientData(NumericalError):
    pass


# laurent
class ZeroLeadingCoefficient(NumericalError):
    pass


class DomainTooSmall(OpshiftError, ValueError):
    pass


# asymptotics
class InsufficientDepth(InsufficientData):
    pass


class DegenerateKappa(NumericalError):
    pass


class NotDegenerate(NumericalError):
    pass


class CrossCheckFailed(NumericalError):
    pass


# classical
class PoleHit(NumericalError):
    pass


class EigenFailure(NumericalError):
    pass


class BadPattern(OpshiftError, ValueError):
    pass
