"""Resource management for memory, wall-clock budgets and measurement.

This module provides a decorator that guards memory-hungry routines such as
exhaustive enumeration, a wall-clock budget consulted by the solver loop, and
a context manager measuring wall time and RSS growth of a block.

Dependencies:
    - functools: Function wrapping utilities
    - time: Time measurement
    - contextlib: Context manager support
    - psutil: System and process utilities
    - src.core.exceptions: ResourceExhaustedError
    - src.config: MAX_MEMORY_BYTES constant
"""

import functools
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Optional, TypeVar, cast

import psutil

from src.config import MAX_MEMORY_BYTES, MAX_MEMORY_GB
from src.core.exceptions import ResourceExhaustedError

F = TypeVar("F", bound=Callable[..., Any])

MEMORY_UNIT_MB = 1024 * 1024


def _check_memory_limit() -> None:
    """Check if current memory usage exceeds limit.

    :raises ResourceExhaustedError: If memory usage exceeds the limit
    """
    process = psutil.Process()
    memory_info = process.memory_info()

    if memory_info.rss > MAX_MEMORY_BYTES:
        usage_gb = memory_info.rss / (1024 ** 3)
        raise ResourceExhaustedError(
            f"Memory limit of {MAX_MEMORY_GB}GB exceeded. "
            f"Current usage: {usage_gb:.2f}GB"
        )


def monitor_memory(func: F) -> F:
    """Decorator to monitor memory usage.

    Checks memory usage before and after function execution.

    :param func: The function to monitor
    :type func: Callable
    :return: Wrapped function with memory monitoring
    :rtype: Callable
    :raises ResourceExhaustedError: If memory usage exceeds the limit
    """
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        _check_memory_limit()
        result = func(*args, **kwargs)
        _check_memory_limit()
        return result

    return cast(F, wrapper)


class WallClockBudget:
    """Deadline for a long-running loop.

    ``None`` as the limit means the budget never expires.
    """

    def __init__(self, limit_seconds: Optional[float]) -> None:
        """Start the clock.

        :param limit_seconds: Seconds allowed, or None for no limit
        :type limit_seconds: Optional[float]
        """
        self.limit_seconds = limit_seconds
        self._start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        """Seconds since the budget was created."""
        return time.perf_counter() - self._start

    def expired(self) -> bool:
        """Return True once the elapsed time reaches the limit.

        :return: Whether the budget is exhausted
        :rtype: bool
        """
        if self.limit_seconds is None:
            return False
        return self.elapsed >= self.limit_seconds


@dataclass
class ResourceUsage:
    """Wall time and RSS growth of a measured block.

    :param wall_time: Elapsed seconds
    :type wall_time: float
    :param ram_usage_mb: RSS growth in MB, clipped at zero
    :type ram_usage_mb: float
    """

    wall_time: float = 0.0
    ram_usage_mb: float = 0.0


@contextmanager
def measure_resources() -> Iterator[ResourceUsage]:
    """Measure wall time and RSS growth of the enclosed block.

    The yielded object is filled in when the block exits.

    :return: Usage record populated on exit
    :rtype: Iterator[ResourceUsage]
    """
    usage = ResourceUsage()
    process = psutil.Process()
    memory_before = process.memory_info().rss / MEMORY_UNIT_MB
    start_time = time.perf_counter()
    try:
        yield usage
    finally:
        usage.wall_time = time.perf_counter() - start_time
        memory_after = process.memory_info().rss / MEMORY_UNIT_MB
        usage.ram_usage_mb = max(0.0, memory_after - memory_before)
