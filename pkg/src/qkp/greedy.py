"""Remove-then-fill greedy heuristic for the quadratic knapsack problem.

Starting from the full selection, items with the smallest
contribution-to-weight ratio are dropped until the capacity holds; the
dropped items are then scanned in decreasing ratio and re-added whenever
they fit. A contribution counts the item's diagonal profit plus both
symmetric couplings to the items currently selected.

Dependencies:
    - fractions: Exact ratio comparison
    - numpy: Contribution vectors
    - src.qkp.instance: QkpInstance, KnapsackSolution
"""

import logging
from fractions import Fraction
from typing import List

import numpy as np
import numpy.typing as npt

from src.qkp.instance import KnapsackSolution, QkpInstance, profit

logger = logging.getLogger(__name__)


def contributions(
    instance: QkpInstance, selected: npt.NDArray[np.bool_]
) -> npt.NDArray[np.int64]:
    """Profit each item adds to (or brings into) the current selection.

    :param instance: QKP instance
    :type instance: QkpInstance
    :param selected: Boolean selection mask
    :type selected: numpy.ndarray
    :return: ``P_ii + 2 * sum_{j selected, j != i} P_ij`` per item
    :rtype: numpy.ndarray
    """
    diag = np.diag(instance.profits)
    coupled = instance.profits @ selected.astype(np.int64) - diag * selected
    return np.asarray(diag + 2 * coupled, dtype=np.int64)


def _ratio(value: int, weight: int) -> Fraction:
    return Fraction(int(value), int(weight))


def greedy(instance: QkpInstance) -> KnapsackSolution:
    """Feasible greedy solution and its profit.

    When no single item fits, the result is the empty selection.

    :param instance: QKP instance
    :type instance: QkpInstance
    :return: Greedy configuration and profit
    :rtype: KnapsackSolution
    """
    weights = instance.weights
    selected = np.ones(instance.n, dtype=bool)
    load = int(weights.sum())

    while load > instance.capacity:
        gains = contributions(instance, selected)
        candidates = np.flatnonzero(selected).tolist()
        drop = min(candidates, key=lambda i: (_ratio(gains[i], weights[i]), i))
        selected[drop] = False
        load -= int(weights[drop])

    gains = contributions(instance, selected)
    order: List[int] = sorted(
        np.flatnonzero(~selected).tolist(),
        key=lambda i: (-_ratio(gains[i], weights[i]), i),
    )
    for item in order:
        if load + int(weights[item]) <= instance.capacity:
            selected[item] = True
            load += int(weights[item])

    config = tuple(int(v) for v in selected)
    value = profit(instance, config)
    logger.debug(
        "greedy: n=%d load=%d/%d profit=%d",
        instance.n,
        load,
        instance.capacity,
        value,
    )
    return KnapsackSolution(config=config, profit=value)
