"""Constrained binary problems and their Lagrangian relaxation.

A constrained problem minimizes a QUBO objective ``f_0`` subject to K
constraints ``F_k(x) <= C_k`` or ``F_k(x) = C_k``. Each ``F_k`` reuses the
QUBO shape, so linear and quadratic constraints share one representation.

Dependencies:
    - enum: Constraint sense flags
    - dataclasses: Immutable problem container
    - numpy: Vectorized constraint evaluation
    - src.model.qubo: QuboProblem and batch energies
    - src.core.exceptions: DimensionError, DomainError
    - src.config: EQUALITY_TOLERANCE
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from src.config import EQUALITY_TOLERANCE
from src.core.exceptions import DimensionError, DomainError
from src.core.validation import validate_binary_batch
from src.model.qubo import QuboProblem, evaluate_forms

FloatArray = npt.NDArray[np.float64]


class Sense(str, Enum):
    """Constraint sense."""

    LESS_EQUAL = "<="
    EQUAL = "=="


@dataclass(frozen=True, eq=False)
class ConstrainedProblem:
    """Minimize ``f_0(x)`` subject to ``F_k(x) (<= | =) C_k``.

    :param objective: Objective form f_0 (minimization sense)
    :type objective: QuboProblem
    :param constraints: Constraint forms F_k
    :type constraints: Tuple[QuboProblem, ...]
    :param bounds: Right-hand sides C_k
    :type bounds: numpy.ndarray
    :param senses: Per-constraint sense; defaults to all LESS_EQUAL
    :type senses: Tuple[Sense, ...]
    """

    objective: QuboProblem
    constraints: Tuple[QuboProblem, ...]
    bounds: FloatArray
    senses: Tuple[Sense, ...] = ()

    def __post_init__(self) -> None:
        constraints = tuple(self.constraints)
        if not constraints:
            raise DimensionError("At least one constraint is required")
        bounds = np.array(self.bounds, dtype=np.float64).reshape(-1)
        if bounds.shape[0] != len(constraints):
            raise DimensionError(
                f"{bounds.shape[0]} bounds given for "
                f"{len(constraints)} constraints"
            )
        for k, form in enumerate(constraints):
            if form.n != self.objective.n:
                raise DimensionError(
                    f"Constraint {k} has {form.n} variables, objective has "
                    f"{self.objective.n}"
                )
        senses = tuple(Sense(s) for s in self.senses) or (
            (Sense.LESS_EQUAL,) * len(constraints)
        )
        if len(senses) != len(constraints):
            raise DimensionError(
                f"{len(senses)} senses given for {len(constraints)} "
                "constraints"
            )
        bounds.setflags(write=False)
        object.__setattr__(self, "constraints", constraints)
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "senses", senses)

    @property
    def n(self) -> int:
        """Number of binary variables."""
        return self.objective.n

    @property
    def num_constraints(self) -> int:
        """Number of constraints K."""
        return len(self.constraints)

    @property
    def inequality_mask(self) -> npt.NDArray[np.bool_]:
        """Boolean mask of LESS_EQUAL constraints."""
        return np.array([s is Sense.LESS_EQUAL for s in self.senses])

    def objective_values(self, configs: Any) -> FloatArray:
        """Objective of each row of a configuration batch.

        :param configs: m×n binary array
        :type configs: Any
        :return: Length-m objective vector
        :rtype: numpy.ndarray
        """
        return evaluate_forms(self.objective, configs)

    def constraint_values(self, configs: Any) -> FloatArray:
        """Constraint values of each row of a configuration batch.

        :param configs: m×n binary array
        :type configs: Any
        :return: m×K matrix of F_k values
        :rtype: numpy.ndarray
        """
        batch = validate_binary_batch(configs, self.n)
        return np.stack(
            [evaluate_forms(form, batch) for form in self.constraints],
            axis=1,
        )

    def feasible_mask(self, configs: Any) -> npt.NDArray[np.bool_]:
        """Feasibility of each row of a configuration batch.

        Equality constraints hold within ``EQUALITY_TOLERANCE``.

        :param configs: m×n binary array
        :type configs: Any
        :return: Length-m boolean vector
        :rtype: numpy.ndarray
        """
        residual = self.constraint_values(configs) - self.bounds
        ineq = self.inequality_mask
        ok = np.where(
            ineq,
            residual <= EQUALITY_TOLERANCE,
            np.abs(residual) <= EQUALITY_TOLERANCE,
        )
        return np.asarray(np.all(ok, axis=1))

    def is_feasible(self, config: Sequence[int]) -> bool:
        """Return True if a single configuration satisfies every constraint.

        :param config: Binary vector
        :type config: Sequence[int]
        :return: Feasibility flag
        :rtype: bool
        """
        return bool(self.feasible_mask(np.asarray([config]))[0])


def _relaxation_signs(problem: ConstrainedProblem) -> FloatArray:
    # +mu F for inequalities, -nu F for equalities
    return np.where(problem.inequality_mask, 1.0, -1.0)


def validate_multipliers(
    problem: ConstrainedProblem, mu: Any
) -> FloatArray:
    """Check multiplier length and sign.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :param mu: Length-K multiplier vector
    :type mu: Any
    :return: Multipliers as float64
    :rtype: numpy.ndarray
    :raises DimensionError: If the length differs from K
    :raises DomainError: If an inequality multiplier is negative
    """
    multipliers = np.array(mu, dtype=np.float64).reshape(-1)
    if multipliers.shape[0] != problem.num_constraints:
        raise DimensionError(
            f"{multipliers.shape[0]} multipliers given for "
            f"{problem.num_constraints} constraints"
        )
    negative = (multipliers < 0) & problem.inequality_mask
    if np.any(negative):
        raise DomainError(
            "Multipliers of inequality constraints must be non-negative, "
            f"got {multipliers.tolist()}"
        )
    return multipliers


def dual_constant(problem: ConstrainedProblem, mu: Any) -> float:
    """Constant completing the relaxed energy to the Lagrangian.

    ``-sum_k mu_k C_k`` over inequalities plus ``+sum_k nu_k C_k`` over
    equalities.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :param mu: Length-K multiplier vector
    :type mu: Any
    :return: Constant term
    :rtype: float
    """
    multipliers = validate_multipliers(problem, mu)
    signs = _relaxation_signs(problem)
    return -float(np.sum(signs * multipliers * problem.bounds))


def build_relaxed_qubo(problem: ConstrainedProblem, mu: Any) -> QuboProblem:
    """Relaxed QUBO ``f_0 + sum_k mu_k F_k`` (``- nu_k F_k`` for equalities).

    The dual constant is stored in ``metadata["dual_offset"]`` and is not
    part of the returned model's energy.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :param mu: Length-K multiplier vector
    :type mu: Any
    :return: Relaxed model
    :rtype: QuboProblem
    :raises DomainError: If an inequality multiplier is negative
    """
    multipliers = validate_multipliers(problem, mu)
    weights = _relaxation_signs(problem) * multipliers

    coeffs = problem.objective.coeffs.copy()
    offset = problem.objective.offset
    for weight, form in zip(weights.tolist(), problem.constraints):
        if weight != 0.0:
            coeffs += weight * form.coeffs
            offset += weight * form.offset

    metadata = {"dual_offset": dual_constant(problem, multipliers)}
    return QuboProblem(coeffs, offset, metadata)
