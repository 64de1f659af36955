"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Raised when a graph description (text, JSON, or edge list) is invalid."""


class BudgetExceededError(RuntimeError):
    """A combinatorial enumeration outgrew its budget.

    ``dimension_reached`` records how far the clique enumeration got before
    giving up; other budgeted searches leave it as None.
    """

    def __init__(self, message, dimension_reached=None):
        super().__init__(message)
        self.dimension_reached = dimension_reached


class SizeLimitError(RuntimeError):
    """Dense numerical work refused because the operator is too large."""


class ResonantTimeError(RuntimeError):
    """sin(lambda*T) vanished for a nonzero eigenvalue; retry with another T."""

    def __init__(self, message, eigenvalue):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NotApplicableError(RuntimeError):
    """An operation's precondition (e.g. geometric of odd dimension) fails."""
