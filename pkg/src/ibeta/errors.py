"""Exception hierarchy.

``DomainError`` subclasses map to CLI exit code 2, ``CapError`` subclasses
to exit code 3.
"""


class IbetaError(Exception):
    pass


class DomainError(IbetaError, ValueError):
    pass


class CapError(IbetaError):
    pass


class NoRootInRange(DomainError):
    pass


class MultipleRootsInRange(DomainError):
    pass


class NotSquareFree(DomainError):
    pass


class NonInvertible(DomainError, ZeroDivisionError):
    pass


class RefinementCapExceeded(CapError):
    pass


class CertificationFailure(CapError):
    pass


class OutOfDomain(DomainError):
    pass


class IndexOutOfRange(DomainError, IndexError):
    pass


class PisotGuaranteeViolated(CapError):
    """An orbit over a certified Pisot base did not close within the cap."""


class NotSoficInput(DomainError):
    pass


class StateLimitExceeded(CapError):
    pass


class NotFound(CapError):
    pass


class NotCoprime(DomainError):
    pass


class BetaOutOfRange(DomainError):
    pass


class OutOfRegion(DomainError):
    pass


class ExperimentalRegionHit(IbetaError):
    """Raised under strict mode when a verdict rests on a k >= 2 region formula."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
