"""Exception hierarchy shared by all wavetriads modules."""


class WavetriadsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WavetriadsError):
    """A value is outside the mathematical domain of an operation
    (non-positive wavenumbers, singular denominators, bad basin sizes)."""


class UsageError(WavetriadsError):
    """An operation was called in a way its contract forbids
    (exact search on a floating dispersion, contradictory thresholds)."""
