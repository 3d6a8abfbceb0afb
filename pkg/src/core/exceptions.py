"""Custom exceptions for ohzeki_qkp.

This module defines all custom exception classes used throughout the
application for error handling and validation.

Dependencies:
    None (pure exception definitions)
"""


class OhzekiError(Exception):
    """Common base of every error raised by this package."""


class DimensionError(OhzekiError):
    """Raised when vector or matrix shapes do not agree.

    Used for configurations whose length differs from the variable count and
    for non-square coefficient matrices.

    :param message: Error message describing the mismatch
    """


class DomainError(OhzekiError):
    """Raised when a value lies outside its mathematical domain.

    Used for non-binary configurations, negative multipliers on inequality
    constraints and a zero optimum in the relative error.

    :param message: Error message describing the invalid value
    """


class CapacityError(OhzekiError):
    """Raised when a problem is too large for an exhaustive backend.

    :param message: Error message naming the size and the limit
    """


class ConfigError(OhzekiError):
    """Raised when sampler, solver or plan parameters are invalid.

    :param message: Error message describing the invalid parameter
    """


class SubgradientVanishedError(OhzekiError):
    """Raised when every constraint residual is exactly zero.

    The step-size rule divides by the squared residual norm, so this signals
    the ε stopping condition to the caller.

    :param message: Error message describing the state
    """


class UnsupportedConstraintError(OhzekiError):
    """Raised when a constraint cannot be expressed by a formulation.

    The slack-variable penalty only handles integer-valued linear
    inequality constraints.

    :param message: Error message naming the offending constraint
    """


class ResourceExhaustedError(OhzekiError):
    """Raised when resource limits are exceeded.

    Used when process memory exceeds the configured limit.

    :param message: Error message describing the resource exhaustion
    """


class ReportIOError(OhzekiError):
    """Raised when reading or writing a file fails.

    :param message: Error message including the file path
    """
