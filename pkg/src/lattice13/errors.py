"""Exception hierarchy shared by all modules."""


class LatticeError(Exception):
    """Base class for every error raised by lattice13."""


class NonPositiveDefinite(LatticeError, ValueError):
    pass


class NonTermination(LatticeError, RuntimeError):
    """Raised when an iterative reduction exceeds its step budget."""


class InternalAssertion(LatticeError, AssertionError):
    pass


class KindMismatch(LatticeError, ValueError):
    pass


class DegenerateCone(LatticeError, ValueError):
    pass


class RetryExhausted(LatticeError, RuntimeError):
    pass


class NotReduced(LatticeError, ValueError):
    pass


class ParseError(LatticeError, ValueError):
    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row
