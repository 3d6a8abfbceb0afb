"""Pytest configuration and shared fixtures.

Dependencies:
    - pytest: Testing framework
    - numpy: Random test matrices
"""

from typing import Callable

import numpy as np
import pytest

from src.model.constrained import ConstrainedProblem
from src.model.qubo import QuboProblem
from src.qkp.instance import QkpInstance, to_constrained


@pytest.fixture
def two_item_instance() -> QkpInstance:
    """P=[[10,5],[5,20]], w=(3,4), c=4; optimum (0,1) with profit 20."""
    return QkpInstance(
        profits=np.array([[10, 5], [5, 20]]),
        weights=np.array([3, 4]),
        capacity=4,
    )


@pytest.fixture
def two_item_problem(two_item_instance: QkpInstance) -> ConstrainedProblem:
    """Minimization form of the two-item instance."""
    return to_constrained(two_item_instance)


@pytest.fixture
def random_qubo() -> Callable[[int, int], QuboProblem]:
    """Factory of symmetric QUBOs with entries uniform in [-1, 1]."""

    def build(n: int, seed: int) -> QuboProblem:
        rng = np.random.default_rng(seed)
        upper = np.triu(rng.uniform(-1.0, 1.0, size=(n, n)))
        return QuboProblem(upper + np.triu(upper, k=1).T)

    return build
