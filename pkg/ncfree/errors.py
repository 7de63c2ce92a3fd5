"""
Error hierarchy for ncfree.

Domain errors derive from ValueError so that callers can keep catching
ValueError for bad inputs, the same convention the rest of the package
uses for argument validation.
"""


class NCFreeError(Exception):
    """Root of every error raised by ncfree."""


class DomainError(NCFreeError, ValueError):
    """An input lies outside the domain of an operation."""


class CapacityError(DomainError):
    """A degree cap or ground-set cap is too small for the request."""


class UnsupportedValueError(DomainError):
    """The requested value has no exact Gaussian-rational representation."""


class LiteralSyntaxError(DomainError):
    """A partition or epsilon literal could not be parsed."""


class SeriesFormatError(DomainError):
    """A serialized series or space is malformed."""


class ConsistencyError(NCFreeError):
    """Two independent computations of the same quantity disagree."""
