"""Exception hierarchy shared across the package."""


class QuadApproxError(Exception):
    """Base class for all package errors."""


class DomainError(QuadApproxError, ValueError):
    """An input lies outside the domain of an operation."""


class UnsupportedDegreeError(DomainError):
    pass


class ReducibleError(DomainError):
    """Raised when a polynomial meant to be minimal factors over Q."""

    def __init__(self, poly, factor=None):
        self.poly = poly
        self.factor = factor
        msg = f"{poly} is reducible over Q"
        if factor is not None:
            msg += f" (factor: {factor})"
        super().__init__(msg)


class NotSquarefreeError(DomainError):
    def __init__(self, poly, repeated):
        self.poly = poly
        self.repeated = repeated
        super().__init__(f"{poly} is not squarefree; gcd(P, P') = {repeated}")


class PrecisionError(QuadApproxError):
    """Working precision reached its cap before a certified answer."""


class InconsistentDiskError(QuadApproxError):
    """A supplied root disk failed certification."""


class UndecidedError(QuadApproxError):
    """A certified decision could not be reached at the precision cap."""


class ResourceLimitError(QuadApproxError):
    """Exact arithmetic exceeded an internal size cap."""


class ParseError(DomainError):
    pass
