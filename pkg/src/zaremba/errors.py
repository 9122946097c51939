"""Exception types shared across the package."""


class ZarembaError(ValueError):
    """Base class for rejected inputs and failed numerical checks."""


class WindowError(ZarembaError):
    """An exponent lies outside the admissible open window."""

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class SingularPointError(ZarembaError):
    """Evaluation requested at a point where the quantity is singular."""


class InconclusiveError(ZarembaError):
    """A diagnostic could not reach a verdict (e.g. degenerate samples)."""


class SolverError(ZarembaError):
    """The discretized boundary-integral system is singular or ill-conditioned."""
