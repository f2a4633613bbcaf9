"""Exception types shared across the package.

Every error raised on purpose derives from :class:`NormDynamicsError` so
callers (and the CLI exit-code mapping) can tell domain failures apart from
genuine bugs.
"""

from __future__ import annotations


class NormDynamicsError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(NormDynamicsError, ValueError):
    """A parameter is outside its documented domain (range/domain error)."""


class DegenerateDistributionError(NormDynamicsError):
    """A conditioning event or prior carries (numerically) zero mass."""


class DistributionRequiredError(NormDynamicsError):
    """An operation needs a full prior density, not just summary statistics."""


class SchemaError(NormDynamicsError):
    """A result table does not match the schema an emitter expects."""


class ConfigParseError(NormDynamicsError):
    """A config file could not be parsed; message carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigValidationError(NormDynamicsError):
    """A parsed config value violates a constraint; message names the field."""
