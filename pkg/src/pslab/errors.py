"""Exception hierarchy shared by every pslab module."""


class PslabError(Exception):
    """Base class for all pslab errors."""


class ValidationError(PslabError, ValueError):
    """An input violates a declared invariant (Hermiticity, PSD, trace...)."""


class DimensionError(PslabError, ValueError):
    pass


class DomainError(PslabError, ValueError):
    """A scalar argument lies outside the domain of the operation."""


class ConvergenceError(PslabError, RuntimeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class MajorizationError(PslabError, ValueError):
    """The majorization precondition fails.

    ``prefix_index`` is the first (0-based) prefix length minus one at which
    the partial sums of the candidate majorant fall below the other sequence,
    or ``None`` when the failure is not a prefix violation (e.g. unequal totals).
    """

    def __init__(self, message, prefix_index=None):
        super().__init__(message)
        self.prefix_index = prefix_index


class ResolutionError(PslabError, ValueError):
    def __init__(self, message, dx=None):
        super().__init__(message)
        self.dx = dx


class QuadratureError(PslabError, RuntimeError):
    def __init__(self, message, drift=None):
        super().__init__(message)
        self.drift = drift
