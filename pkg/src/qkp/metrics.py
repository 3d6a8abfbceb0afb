"""Accuracy metrics for benchmark runs."""

import math
from typing import Optional, Sequence, Tuple

from src.core.exceptions import DomainError


def relative_error(value: Optional[float], optimum: float) -> float:
    """``|value - optimum| / |optimum|``, or 1 when no feasible value exists.

    :param value: Objective of the returned solution, None if none found
    :type value: Optional[float]
    :param optimum: Reference optimum
    :type optimum: float
    :return: Relative error
    :rtype: float
    :raises DomainError: If the optimum is zero
    """
    if optimum == 0:
        raise DomainError("Relative error is undefined for a zero optimum")
    if value is None:
        return 1.0
    return abs(value - optimum) / abs(optimum)


def mean_and_standard_error(values: Sequence[float]) -> Tuple[float, float]:
    """Sample mean and ``stddev / sqrt(count)``.

    A single value has standard error 0.

    :param values: Non-empty sequence
    :type values: Sequence[float]
    :return: (mean, standard error)
    :rtype: Tuple[float, float]
    :raises DomainError: If the sequence is empty
    """
    count = len(values)
    if count == 0:
        raise DomainError("Cannot aggregate an empty sequence")
    mean = math.fsum(values) / count
    if count == 1:
        return mean, 0.0
    variance = math.fsum((v - mean) ** 2 for v in values) / (count - 1)
    return mean, math.sqrt(variance / count)
