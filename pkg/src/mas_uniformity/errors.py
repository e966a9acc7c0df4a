"""Exception hierarchy.

Every input error is a ``ValueError`` so callers that do not care about the
exact failure can catch a single type.
"""


class UniformityError(ValueError):
    """Base class for all input errors raised by this package."""


class EmptyInputError(UniformityError):
    pass


class AllZeroError(UniformityError):
    pass


class NonFiniteError(UniformityError):
    pass


class SingleClusterError(UniformityError):
    """The operation needs at least two nonempty clusters."""


class IndexOutOfRangeError(UniformityError, IndexError):
    pass


class LengthMismatchError(UniformityError):
    pass


class DegenerateClusteringError(UniformityError):
    """Silhouette is undefined for K = 1 or K = N."""


class AllPairsTiedError(UniformityError):
    """No candidate pair survives tie exclusion, so PWRS has no denominator."""


class OutOfRangeError(UniformityError):
    pass


class NoValidCandidatesError(UniformityError):
    pass


class EmptyActiveSetError(UniformityError):
    pass


class BoundViolation(AssertionError):
    """A numerical property check observed a value outside its proven bound.

    Carries the offending report so the CLI can print the witness.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
