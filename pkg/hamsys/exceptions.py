"""Errors raised by hamsys.

Value-type errors also derive from ``ValueError`` so callers that only know the
standard library can still catch them.
"""


class HamSysError(Exception):
    """Base class for every error raised by this package."""


class CapacityError(HamSysError, ValueError):
    """Raised when a basis is requested with more modes than the implementation cap."""


class DomainError(HamSysError, ValueError):
    """Raised for invalid domain parameters or an operation the domain cannot support."""


class BasisMismatchError(HamSysError, ValueError):
    """Raised when fields living on different bases are combined."""


class UnsupportedRegimeError(HamSysError):
    """Raised when an exponent pair violates the hypothesis a method needs.

    The ``hypothesis`` attribute holds the failing flag name (``"H1"``, ``"H3"``,
    ``"H4"`` or ``"pq=1"``).
    """

    def __init__(self, msg, hypothesis):
        super().__init__(msg)
        self.hypothesis = hypothesis


class ConvergenceError(HamSysError):
    """Raised when an iterative method failed for good.

    Holds the framework tag and the iteration trace collected so far.
    """

    def __init__(self, msg, framework=None, trace=None):
        super().__init__(msg)
        self.framework = framework
        self.trace = list(trace or [])


class InnerSolverError(ConvergenceError):
    """The anti-diagonal maximization of the reduction did not converge."""


class NoAscentDirectionError(ConvergenceError):
    """No direction with positive coupling term could be found for the dual method."""


class WindowError(ConvergenceError):
    """The supremum along a ray is not attained inside the search window."""


class OracleError(ConvergenceError):
    """The shooting oracle found no admissible shot."""


class UnconvergedResultError(HamSysError, ValueError):
    """Raised when verification is asked to certify an unconverged result."""


class InsufficientResultsError(HamSysError, ValueError):
    """Raised when a comparison needs more results than were given."""


class ProblemMismatchError(HamSysError, ValueError):
    """Raised when results to be compared describe different problems."""


class ConfigError(HamSysError, ValueError):
    """Raised for unreadable or invalid run configuration.

    ``field`` names the offending ``section.key`` and ``line`` the line number
    when the parser could tell.
    """

    def __init__(self, msg, field=None, line=None):
        super().__init__(msg)
        self.field = field
        self.line = line
