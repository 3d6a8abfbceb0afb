"""Quadratic knapsack instances: generation, persistence, conversion.

An instance maximizes ``sum_ij P_ij x_i x_j`` subject to
``sum_i w_i x_i <= c``. Generated instances follow the classical random
scheme: every diagonal profit and each off-diagonal pair (with probability
Δ) drawn uniformly from [1, 100], weights from [1, 50] and the capacity from
[50, sum w].

Dependencies:
    - logging: Generator warnings
    - dataclasses: Immutable instance container
    - typing: NamedTuple for solutions
    - numpy: Integer matrices and the seeded generator
    - src.model: QuboProblem, ConstrainedProblem
    - src.core.exceptions: DimensionError, DomainError, ConfigError
    - src.config: Generator ranges
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, NamedTuple, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from src.config import MIN_CAPACITY, PROFIT_RANGE, WEIGHT_RANGE
from src.core.exceptions import ConfigError, DimensionError, DomainError
from src.core.validation import validate_binary_config
from src.model.constrained import ConstrainedProblem, Sense
from src.model.qubo import QuboProblem

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int64]


class KnapsackSolution(NamedTuple):
    """A configuration and its total profit."""

    config: Tuple[int, ...]
    profit: int


@dataclass(frozen=True, eq=False)
class QkpInstance:
    """Quadratic knapsack instance.

    :param profits: Symmetric non-negative integer n×n profit matrix P
    :type profits: numpy.ndarray
    :param weights: Positive integer weights w
    :type weights: numpy.ndarray
    :param capacity: Positive integer capacity c
    :type capacity: int
    :param density: Off-diagonal density Δ used by the generator
    :type density: float
    :param seed: Generator seed
    :type seed: int
    :param warnings: Caveats recorded during generation
    :type warnings: Tuple[str, ...]
    """

    profits: IntArray
    weights: IntArray
    capacity: int
    density: float = 1.0
    seed: int = 0
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        profits = np.array(self.profits, dtype=np.int64)
        weights = np.array(self.weights, dtype=np.int64).reshape(-1)
        if profits.ndim != 2 or profits.shape != (weights.shape[0],) * 2:
            raise DimensionError(
                f"Profit matrix {profits.shape} does not match "
                f"{weights.shape[0]} weights"
            )
        if weights.shape[0] < 1:
            raise DimensionError("An instance needs at least one item")
        if not np.array_equal(profits, profits.T):
            raise DomainError("Profit matrix must be symmetric")
        if np.any(profits < 0):
            raise DomainError("Profits must be non-negative")
        if np.any(weights < 1):
            raise DomainError("Weights must be positive integers")
        if int(self.capacity) < 1:
            raise DomainError(f"Capacity must be positive, got {self.capacity}")
        profits.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "profits", profits)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "capacity", int(self.capacity))
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @property
    def n(self) -> int:
        """Number of items."""
        return int(self.weights.shape[0])

    @property
    def total_profit(self) -> int:
        """``sum_ij P_ij``, the profit of selecting every item."""
        return int(self.profits.sum())

    def to_dict(self) -> Dict[str, Any]:
        """Serialize with upper-triangular profit triplets.

        :return: JSON-ready mapping
        :rtype: Dict[str, Any]
        """
        rows, cols = np.nonzero(np.triu(self.profits))
        return {
            "n": self.n,
            "delta": self.density,
            "seed": self.seed,
            "profits": [
                [i, j, int(self.profits[i, j])]
                for i, j in zip(rows.tolist(), cols.tolist())
            ],
            "weights": self.weights.tolist(),
            "capacity": self.capacity,
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "QkpInstance":
        """Inverse of :meth:`to_dict`.

        :param payload: Mapping in the instance-file layout
        :type payload: Mapping[str, Any]
        :return: Instance
        :rtype: QkpInstance
        """
        n = int(payload["n"])
        profits = np.zeros((n, n), dtype=np.int64)
        for i, j, value in payload["profits"]:
            profits[int(i), int(j)] = int(value)
            profits[int(j), int(i)] = int(value)
        return cls(
            profits=profits,
            weights=np.asarray(payload["weights"], dtype=np.int64),
            capacity=int(payload["capacity"]),
            density=float(payload.get("delta", 1.0)),
            seed=int(payload.get("seed", 0)),
        )


def generate(n: int, delta: float, seed: int) -> QkpInstance:
    """Draw a random instance, deterministic per seed.

    When ``sum w < 50`` the capacity is drawn from ``[sum w, sum w]`` and a
    warning is recorded on the instance.

    :param n: Item count (≥ 1)
    :type n: int
    :param delta: Off-diagonal density in (0, 1]
    :type delta: float
    :param seed: Seed of the generator
    :type seed: int
    :return: Generated instance
    :rtype: QkpInstance
    :raises ConfigError: If n < 1 or delta outside (0, 1]
    """
    if n < 1:
        raise ConfigError(f"Item count must be at least 1, got {n}")
    if not 0.0 < delta <= 1.0:
        raise ConfigError(f"Density must lie in (0, 1], got {delta}")

    rng = np.random.default_rng(seed)
    low, high = PROFIT_RANGE
    profits = np.zeros((n, n), dtype=np.int64)
    profits[np.diag_indices(n)] = rng.integers(low, high + 1, size=n)
    upper_i, upper_j = np.triu_indices(n, k=1)
    present = rng.random(upper_i.shape[0]) < delta
    values = rng.integers(low, high + 1, size=upper_i.shape[0])
    profits[upper_i, upper_j] = np.where(present, values, 0)
    profits[upper_j, upper_i] = profits[upper_i, upper_j]

    weights = rng.integers(WEIGHT_RANGE[0], WEIGHT_RANGE[1] + 1, size=n)
    total_weight = int(weights.sum())
    warnings: Tuple[str, ...] = ()
    lowest = MIN_CAPACITY
    if total_weight < MIN_CAPACITY:
        lowest = total_weight
        message = (
            f"total weight {total_weight} < {MIN_CAPACITY}; capacity drawn "
            f"from [{lowest}, {total_weight}]"
        )
        warnings = (message,)
        logger.warning("seed %d: %s", seed, message)
    capacity = int(rng.integers(lowest, total_weight + 1))

    return QkpInstance(
        profits=profits,
        weights=weights,
        capacity=capacity,
        density=delta,
        seed=seed,
        warnings=warnings,
    )


def to_constrained(instance: QkpInstance) -> ConstrainedProblem:
    """Minimization form: ``f_0 = -x^T P x``, ``F_1 = w^T x <= c``.

    :param instance: QKP instance
    :type instance: QkpInstance
    :return: Constrained problem with K = 1
    :rtype: ConstrainedProblem
    """
    return ConstrainedProblem(
        objective=QuboProblem(-instance.profits.astype(np.float64)),
        constraints=(QuboProblem.from_linear(instance.weights.tolist()),),
        bounds=np.array([float(instance.capacity)]),
        senses=(Sense.LESS_EQUAL,),
    )


def profit(instance: QkpInstance, config: Sequence[int]) -> int:
    """Total profit ``x^T P x`` of a configuration.

    :param instance: QKP instance
    :type instance: QkpInstance
    :param config: Binary vector
    :type config: Sequence[int]
    :return: Profit
    :rtype: int
    """
    x = validate_binary_config(config, instance.n).astype(np.int64)
    return int(x @ instance.profits @ x)


def is_feasible(instance: QkpInstance, config: Sequence[int]) -> bool:
    """Whether the configuration respects the capacity.

    :param instance: QKP instance
    :type instance: QkpInstance
    :param config: Binary vector
    :type config: Sequence[int]
    :return: ``w^T x <= c``
    :rtype: bool
    """
    x = validate_binary_config(config, instance.n).astype(np.int64)
    return int(x @ instance.weights) <= instance.capacity
