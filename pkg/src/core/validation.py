"""Validation utilities for configurations, matrices and parameters.

This module provides the checks shared by the model, samplers and solver:
binary configuration vectors, square symmetric coefficient matrices and
positive or bounded scalar parameters.

Dependencies:
    - numpy: Array inspection
    - src.core.exceptions: DimensionError, DomainError, ConfigError
"""

from typing import Any

import numpy as np
import numpy.typing as npt

from src.core.exceptions import ConfigError, DimensionError, DomainError


def validate_binary_config(config: Any, n: int) -> npt.NDArray[np.int8]:
    """Validate a configuration and return it as an int8 vector.

    :param config: Sequence of 0/1 values
    :type config: Any
    :param n: Expected length
    :type n: int
    :return: Configuration as a one-dimensional int8 array
    :rtype: numpy.ndarray
    :raises DimensionError: If the length differs from n
    :raises DomainError: If any entry is not 0 or 1
    """
    array = np.asarray(config)
    if array.ndim != 1 or array.shape[0] != n:
        raise DimensionError(
            f"Configuration of shape {array.shape} does not match "
            f"{n} variables"
        )
    if not np.all((array == 0) | (array == 1)):
        raise DomainError(
            f"Configuration entries must be 0 or 1, got {array.tolist()}"
        )
    return array.astype(np.int8)


def validate_binary_batch(configs: Any, n: int) -> npt.NDArray[np.int8]:
    """Validate a batch of configurations stacked row-wise.

    :param configs: Two-dimensional array-like of 0/1 rows
    :type configs: Any
    :param n: Expected row length
    :type n: int
    :return: Batch as a two-dimensional int8 array
    :rtype: numpy.ndarray
    :raises DimensionError: If rows do not have length n
    :raises DomainError: If any entry is not 0 or 1
    """
    array = np.asarray(configs)
    if array.ndim != 2 or array.shape[1] != n:
        raise DimensionError(
            f"Configuration batch of shape {array.shape} does not match "
            f"{n} variables"
        )
    if not np.all((array == 0) | (array == 1)):
        raise DomainError("Configuration entries must be 0 or 1")
    return array.astype(np.int8)


def validate_square_symmetric(
    matrix: Any, name: str = "matrix"
) -> npt.NDArray[np.float64]:
    """Validate that a matrix is square and exactly symmetric.

    :param matrix: Two-dimensional array-like
    :type matrix: Any
    :param name: Name used in error messages
    :type name: str
    :return: Matrix as a float64 array
    :rtype: numpy.ndarray
    :raises DimensionError: If the matrix is not square or is empty
    :raises DomainError: If the matrix is not symmetric or not finite
    """
    array = np.array(matrix, dtype=np.float64)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DimensionError(f"{name} must be square, got {array.shape}")
    if array.shape[0] < 1:
        raise DimensionError(f"{name} must have at least one variable")
    if not np.all(np.isfinite(array)):
        raise DomainError(f"{name} contains non-finite entries")
    if not np.array_equal(array, array.T):
        raise DomainError(f"{name} must be symmetric")
    return array


def validate_positive(name: str, value: float) -> None:
    """Validate that a parameter is strictly positive.

    :param name: Parameter name for error messages
    :type name: str
    :param value: Parameter value
    :type value: float
    :raises ConfigError: If value is not > 0
    """
    if not value > 0:
        raise ConfigError(f"{name} must be positive, got {value}")


def validate_at_least(name: str, value: int, minimum: int) -> None:
    """Validate that an integer parameter reaches a minimum.

    :param name: Parameter name for error messages
    :type name: str
    :param value: Parameter value
    :type value: int
    :param minimum: Smallest allowed value
    :type minimum: int
    :raises ConfigError: If value < minimum
    """
    if value < minimum:
        raise ConfigError(f"{name} must be at least {minimum}, got {value}")
