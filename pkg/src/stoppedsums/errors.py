"""Semantic exception hierarchy shared across the package."""


class StoppedSumsError(Exception):
    """Base class for all errors raised by stoppedsums."""


class DomainError(StoppedSumsError):
    """A diagnostic was asked to evaluate where its inputs are undefined,
    e.g. a tail function identically zero on the requested grid."""


class UnsupportedLawError(StoppedSumsError):
    """The lattice engine only accepts laws supported on [0, inf)."""


class TruncationUnreachableError(StoppedSumsError):
    """The counting tail cannot be driven below the requested truncation
    level within the configured term cap."""


class PremiseViolatedError(StoppedSumsError):
    """Numerical evidence contradicts a precondition of the quantity being
    fitted (e.g. a ratio that should stay bounded grows monotonically at
    the boundary of the explored range)."""


class InfiniteMeanError(StoppedSumsError):
    """An operation requiring finite means met a marginal with mean +inf."""


class NonNegativityViolatedError(StoppedSumsError):
    """An operation restricted to nonnegative random variables received a
    law with negative support."""


class ConfigError(StoppedSumsError):
    """A run-configuration document failed validation."""
