"""Exception types raised by the library."""


class GptError(Exception):
    """Base class for library errors."""


class DimensionError(GptError, ValueError):
    """Vector or tensor shape does not match the model."""


class EnumerationLimitError(GptError):
    """Exhaustive enumeration would exceed the configured ceiling."""


class IntractableClassError(GptError):
    """Input lies outside every class for which an exact answer is implemented."""


class UnsupportedNormError(GptError):
    """No extreme-point structure or closed form is available for a norm pair."""


class SolverError(GptError):
    """An optimization backend failed to return an optimal solution."""


class BracketError(GptError):
    """A bisection interval does not bracket the boundary."""
