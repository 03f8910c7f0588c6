"""Exception hierarchy shared by all speclab modules."""


class SpeclabError(Exception):
    """Base class for every error raised by speclab."""


class InvalidDimensionError(SpeclabError, ValueError):
    pass


class InvalidDomainError(SpeclabError, ValueError):
    pass


class InvalidQueryError(SpeclabError, ValueError):
    pass


class SchemeMismatchError(SpeclabError, ValueError):
    """A bound scheme was asked for an order alpha outside its domain."""


class UnverifiedDimensionError(SpeclabError, ValueError):
    """A constant is requested for a dimension where it is not defined."""


class UnspecifiedConstantError(SpeclabError, ValueError):
    pass


class SolverError(SpeclabError, RuntimeError):
    """Numerical solver failure. ``diagnostics`` carries solver state."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class BesselZeroError(SolverError):
    pass


class ConvergenceError(SolverError):
    pass


class MemoryCapError(SolverError):
    pass


class NoClosedFormError(SpeclabError, ValueError):
    pass


class InconsistencyError(SpeclabError, ValueError):
    pass


class DegenerateProfileError(SpeclabError, ValueError):
    pass


class OutOfHypothesisError(SpeclabError, ValueError):
    pass


class ConfigError(SpeclabError, ValueError):
    pass


class ProbeDomainError(SpeclabError, ValueError):
    """A probe point lies outside the interval where a function is studied."""
