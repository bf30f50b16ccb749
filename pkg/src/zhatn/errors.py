"""Exception hierarchy.

Every class carries the CLI exit code it maps to, so the front end never
needs a lookup table of its own.
"""


class ZhatNError(Exception):
    exit_code = 1


class DomainError(ZhatNError, ValueError):
    """Input is well formed but violates a mathematical invariant."""

    exit_code = 1


class MalformedInput(ZhatNError, ValueError):
    exit_code = 2


class FeasibilityError(ZhatNError):
    """An enumeration guard (e.g. the Oct_r rank bound) was exceeded."""

    exit_code = 3


class InternalInconsistency(ZhatNError, AssertionError):
    """A derived identity failed; this signals an arithmetic bug."""

    exit_code = 4


class InvalidModulus(DomainError):
    pass


class NotInZ1N(MalformedInput):
    """A rational whose denominator has a prime factor not dividing N."""


class NotAPositiveUnit(DomainError):
    pass


class ShapeMismatch(DomainError):
    pass


class NotInBall(DomainError):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class NotIdempotent(DomainError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class PreconditionViolation(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class PointNotInSpace(DomainError):
    pass


class CertificateConstructionFailed(InternalInconsistency):
    pass
