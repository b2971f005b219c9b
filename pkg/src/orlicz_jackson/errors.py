"""Exception hierarchy shared by all modules."""


class OrliczJacksonError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(OrliczJacksonError, ValueError):
    """Malformed or inconsistent configuration (bad tags, mismatched windows)."""


class DomainError(OrliczJacksonError, ValueError):
    """An argument lies outside the domain of the operation."""


class WindowError(DomainError):
    """A request needs frequencies outside the finite coefficient window."""


class AliasingError(DomainError):
    """Too few samples for the requested coefficient window."""


class DegenerateMeasureError(DomainError):
    """The I-functional of a measure vanishes, so it certifies no constant."""


class HypothesisError(DomainError):
    """A theorem hypothesis (monotone multiplier, condition B) fails."""


class NonConvergenceError(OrliczJacksonError, ArithmeticError):
    """An iterative solver did not reach its tolerance."""


class SolverError(NonConvergenceError):
    """The simplex solver stopped abnormally (iteration cap, unboundedness)."""
