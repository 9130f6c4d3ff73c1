"""Exception types shared across the package."""


class FiltergstError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(FiltergstError):
    """A physical or numerical parameter is out of its admissible range."""


class InvalidConfigError(FiltergstError):
    """A configuration document is inconsistent or incomplete."""


class QuadratureError(FiltergstError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class NonphysicalParameterError(FiltergstError):
    """Channel parameters violate a physicality requirement (e.g. negative decay)."""


class InconsistentAreaError(InvalidParameterError):
    """Pulse area does not match the required gate-set value."""


class LengthMismatchError(FiltergstError):
    """A flat parameter vector has the wrong length for its model variant."""


class DegenerateDesignError(FiltergstError):
    """Circuit selection found a parameter with no sensitivity in any circuit."""


class RankDeficientError(FiltergstError):
    """A linear-inversion operator matrix is rank deficient."""


class SingularGramError(RankDeficientError):
    """The Gram matrix of SPAM circuits is singular."""


class OptimizationError(FiltergstError):
    """The constrained optimizer failed to produce a feasible estimate."""
