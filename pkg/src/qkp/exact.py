"""Exact QKP oracles.

Two certified solvers share the same tie-break (the lexicographically
smallest optimal configuration, ``x_0`` most significant):

* ``enumerate`` scores all 2**n configurations in chunks, n ≤ 25;
* ``bnb`` runs a depth-first branch-and-bound, n ≤ 32, bounded by the
  continuous relaxation of a linear knapsack over optimistic marginal
  profits of the undecided items.

Beyond capacity the oracle is unavailable and :func:`exact_solve` returns
``None``. :func:`knapsack_dp` solves the purely linear 0/1 knapsack and
serves as an independent cross-check for diagonal-only instances.

Dependencies:
    - math: Floor of the fractional bound
    - numpy: Vectorized enumeration
    - src.samplers.exact: Enumeration order helpers
    - src.config: Oracle capacities
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import BNB_MAX_N, ENUMERATION_MAX_N
from src.core.exceptions import ConfigError
from src.model.qubo import QuboProblem
from src.qkp.instance import KnapsackSolution, QkpInstance, profit
from src.samplers.exact import enumerate_energies, index_to_configs

logger = logging.getLogger(__name__)

ORACLE_METHODS = ("bnb", "enumerate")

_BOUND_SLACK = 1e-9


def oracle_capacity(method: str) -> int:
    """Largest n the given oracle accepts.

    :param method: ``"bnb"`` or ``"enumerate"``
    :type method: str
    :return: Maximum item count
    :rtype: int
    :raises ConfigError: If the method is unknown
    """
    if method == "bnb":
        return BNB_MAX_N
    if method == "enumerate":
        return ENUMERATION_MAX_N
    raise ConfigError(
        f"Unknown oracle '{method}', expected one of {ORACLE_METHODS}"
    )


def _solve_enumerate(instance: QkpInstance) -> KnapsackSolution:
    n = instance.n
    values = -enumerate_energies(QuboProblem(-instance.profits.astype(float)))
    indices = np.arange(1 << n, dtype=np.int64)
    loads = np.zeros(indices.shape[0], dtype=np.int64)
    for i, w in enumerate(instance.weights.tolist()):
        loads += ((indices >> (n - 1 - i)) & 1) * w
    scores = np.where(loads <= instance.capacity, values, -np.inf)
    best = int(np.argmax(scores))
    config = tuple(int(v) for v in index_to_configs(np.array([best]), n)[0])
    return KnapsackSolution(config=config, profit=profit(instance, config))


class _BranchAndBound:
    """Depth-first search over items in index order, 0-branch first."""

    def __init__(self, instance: QkpInstance) -> None:
        self.profits = instance.profits.tolist()
        self.weights = instance.weights.tolist()
        self.capacity = instance.capacity
        self.n = instance.n
        self.best_value = -1
        self.best_config: Tuple[int, ...] = ()
        self.nodes = 0

    def bound(
        self, level: int, value: int, load: int, links: Sequence[int]
    ) -> float:
        """Upper bound on any completion of the current partial assignment.

        ``links[i]`` is ``sum_{j selected} P_ij``. Each undecided item that
        still fits gets the optimistic gain ``P_ii + 2 links[i] +
        sum_{j free, j != i} P_ij``; the bound is ``value`` plus the
        fractional knapsack optimum over those gains.
        """
        room = self.capacity - load
        free = [i for i in range(level, self.n) if self.weights[i] <= room]
        if not free:
            return float(value)
        gains = []
        for i in free:
            row = self.profits[i]
            among_free = sum(row[j] for j in free) - row[i]
            gains.append((row[i] + 2 * links[i] + among_free, i))
        gains.sort(key=lambda g: g[0] / self.weights[g[1]], reverse=True)
        extra = 0.0
        for gain, i in gains:
            w = self.weights[i]
            if w <= room:
                extra += gain
                room -= w
            else:
                extra += gain * room / w
                break
        return value + extra

    def search(
        self,
        level: int,
        value: int,
        load: int,
        links: List[int],
        prefix: List[int],
    ) -> None:
        self.nodes += 1
        if level == self.n:
            if value > self.best_value:
                self.best_value = value
                self.best_config = tuple(prefix)
            return
        if math.floor(self.bound(level, value, load, links) + _BOUND_SLACK) <= (
            self.best_value
        ):
            return

        prefix.append(0)
        self.search(level + 1, value, load, links, prefix)
        prefix.pop()

        w = self.weights[level]
        if load + w <= self.capacity:
            row = self.profits[level]
            gain = row[level] + 2 * links[level]
            raised = [links[j] + row[j] for j in range(self.n)]
            prefix.append(1)
            self.search(level + 1, value + gain, load + w, raised, prefix)
            prefix.pop()


def _solve_bnb(instance: QkpInstance) -> KnapsackSolution:
    search = _BranchAndBound(instance)
    search.search(0, 0, 0, [0] * instance.n, [])
    logger.debug("bnb: n=%d nodes=%d", instance.n, search.nodes)
    return KnapsackSolution(config=search.best_config, profit=search.best_value)


def exact_solve(
    instance: QkpInstance, method: str = "bnb"
) -> Optional[KnapsackSolution]:
    """Certified optimum, or ``None`` when the oracle is unavailable.

    :param instance: QKP instance
    :type instance: QkpInstance
    :param method: ``"bnb"`` (n ≤ 32) or ``"enumerate"`` (n ≤ 25)
    :type method: str
    :return: Lexicographically smallest optimal solution, or None
    :rtype: Optional[KnapsackSolution]
    :raises ConfigError: If the method is unknown
    """
    if instance.n > oracle_capacity(method):
        logger.warning(
            "oracle '%s' unavailable for n=%d (limit %d)",
            method,
            instance.n,
            oracle_capacity(method),
        )
        return None
    if method == "enumerate":
        return _solve_enumerate(instance)
    return _solve_bnb(instance)


def knapsack_dp(
    weights: Sequence[int], values: Sequence[int], capacity: int
) -> KnapsackSolution:
    """Linear 0/1 knapsack by dynamic programming over capacity.

    :param weights: Positive integer weights
    :type weights: Sequence[int]
    :param values: Item values
    :type values: Sequence[int]
    :param capacity: Knapsack capacity
    :type capacity: int
    :return: An optimal selection and its value
    :rtype: KnapsackSolution
    """
    n = len(weights)
    table = np.zeros((n + 1, capacity + 1), dtype=np.int64)
    for i in range(1, n + 1):
        w, v = int(weights[i - 1]), int(values[i - 1])
        table[i] = table[i - 1]
        if w <= capacity:
            table[i, w:] = np.maximum(
                table[i - 1, w:], table[i - 1, : capacity + 1 - w] + v
            )

    config = [0] * n
    room = capacity
    for i in range(n, 0, -1):
        if table[i, room] != table[i - 1, room]:
            config[i - 1] = 1
            room -= int(weights[i - 1])
    return KnapsackSolution(config=tuple(config), profit=int(table[n, capacity]))
