"""Binary slack encoding and the penalty QUBO built from it.

An inequality ``F_k(x) <= C_k`` becomes ``F_k(x) + z_k = C_k`` with
``z_k = sum_m a_km b_km``. The coefficients are ``1, 2, ..., 2**(M-2)`` and
a last coefficient clipped to ``C_k - (2**(M-1) - 1)``, where
``M = ceil(log2(C_k + 1))``, so that ``z_k`` covers exactly ``[0, C_k]``.
The equality is then enforced by ``λ (F_k(x) + z_k - C_k)**2``.

Dependencies:
    - dataclasses: Immutable encoding container
    - numpy: Dense QUBO assembly
    - src.model: QuboProblem, ConstrainedProblem, term counting
    - src.core.exceptions: UnsupportedConstraintError, DomainError
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import DomainError, UnsupportedConstraintError
from src.core.validation import validate_binary_config, validate_positive
from src.model.constrained import ConstrainedProblem, Sense, build_relaxed_qubo
from src.model.qubo import QuboProblem, count_quadratic_terms
from src.qkp.instance import QkpInstance, to_constrained

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlackEncoding:
    """Slack bits appended after the original variables.

    :param bits_per_constraint: M_k per constraint
    :type bits_per_constraint: Tuple[int, ...]
    :param bit_coefficients: Coefficients a_km per constraint
    :type bit_coefficients: Tuple[Tuple[int, ...], ...]
    :param penalty_weight: Penalty strength λ
    :type penalty_weight: float
    """

    bits_per_constraint: Tuple[int, ...]
    bit_coefficients: Tuple[Tuple[int, ...], ...]
    penalty_weight: float

    @property
    def num_bits(self) -> int:
        """Total number of slack bits."""
        return sum(self.bits_per_constraint)

    def max_values(self) -> Tuple[int, ...]:
        """Largest encodable slack per constraint."""
        return tuple(sum(coeffs) for coeffs in self.bit_coefficients)


class TermCounts(NamedTuple):
    """Quadratic-term counts of the two formulations."""

    om_terms: int
    slack_terms: int


def bit_coefficients(bound: int) -> Tuple[int, ...]:
    """Clipped binary coefficients covering ``[0, bound]``.

    :param bound: Non-negative integer right-hand side
    :type bound: int
    :return: Coefficients, empty for bound 0
    :rtype: Tuple[int, ...]
    :raises DomainError: If bound is negative
    """
    if bound < 0:
        raise DomainError(f"Slack bound must be non-negative, got {bound}")
    bits = math.ceil(math.log2(bound + 1))
    if bits == 0:
        return ()
    leading = tuple(1 << m for m in range(bits - 1))
    return leading + (bound - ((1 << (bits - 1)) - 1),)


def _integer_bound(value: float, k: int) -> int:
    if not float(value).is_integer():
        raise UnsupportedConstraintError(
            f"Constraint {k} has non-integer bound {value}"
        )
    return int(value)


def _linear_coefficients(form: QuboProblem, k: int) -> np.ndarray:
    if not form.is_linear():
        raise UnsupportedConstraintError(
            f"Constraint {k} is quadratic; slack encoding needs linear forms"
        )
    return np.diag(form.coeffs).copy()


def default_penalty_weight(problem: ConstrainedProblem) -> float:
    """``1 + max |objective coefficient|``.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :return: Penalty weight λ
    :rtype: float
    """
    return 1.0 + float(np.max(np.abs(problem.objective.coeffs)))


def slack_encoding(
    problem: ConstrainedProblem, penalty_weight: Optional[float] = None
) -> SlackEncoding:
    """Slack bits for every constraint of ``problem``.

    :param problem: Problem with LESS_EQUAL constraints
    :type problem: ConstrainedProblem
    :param penalty_weight: λ, defaults to :func:`default_penalty_weight`
    :type penalty_weight: Optional[float]
    :return: Encoding
    :rtype: SlackEncoding
    :raises UnsupportedConstraintError: On equality or non-integer bounds
    """
    weight = (
        default_penalty_weight(problem)
        if penalty_weight is None
        else float(penalty_weight)
    )
    validate_positive("penalty_weight", weight)
    coefficients = []
    for k, (bound, sense) in enumerate(zip(problem.bounds, problem.senses)):
        if sense is not Sense.LESS_EQUAL:
            raise UnsupportedConstraintError(
                f"Constraint {k} is already an equality"
            )
        coefficients.append(bit_coefficients(_integer_bound(bound, k)))
    return SlackEncoding(
        bits_per_constraint=tuple(len(c) for c in coefficients),
        bit_coefficients=tuple(coefficients),
        penalty_weight=weight,
    )


def build_penalty_qubo(
    problem: ConstrainedProblem, penalty_weight: float
) -> QuboProblem:
    """``f_0 + λ sum_k (F_k(x) - C_k)**2`` for linear constraints.

    Every constraint is treated as an equality; the offset of each form
    enters the squared residual.

    :param problem: Problem with linear constraint forms
    :type problem: ConstrainedProblem
    :param penalty_weight: λ > 0
    :type penalty_weight: float
    :return: Penalty QUBO on the same variables
    :rtype: QuboProblem
    :raises UnsupportedConstraintError: If a constraint is quadratic
    """
    validate_positive("penalty_weight", penalty_weight)
    coeffs = np.array(problem.objective.coeffs, dtype=np.float64)
    offset = problem.objective.offset
    for k, (form, bound) in enumerate(zip(problem.constraints, problem.bounds)):
        a = _linear_coefficients(form, k)
        shift = form.offset - float(bound)
        coeffs += penalty_weight * np.outer(a, a)
        coeffs[np.diag_indices_from(coeffs)] += 2.0 * penalty_weight * shift * a
        offset += penalty_weight * shift * shift
    return QuboProblem(coeffs, offset)


def build_slack_qubo(
    problem: ConstrainedProblem, penalty_weight: Optional[float] = None
) -> QuboProblem:
    """Penalty QUBO over ``n + sum_k M_k`` variables.

    :param problem: Problem with integer linear LESS_EQUAL constraints
    :type problem: ConstrainedProblem
    :param penalty_weight: λ, defaults to :func:`default_penalty_weight`
    :type penalty_weight: Optional[float]
    :return: Slack QUBO, original variables first
    :rtype: QuboProblem
    :raises UnsupportedConstraintError: On quadratic or non-integer
        constraints
    """
    encoding = slack_encoding(problem, penalty_weight)
    n = problem.n
    total = n + encoding.num_bits

    objective = np.zeros((total, total))
    objective[:n, :n] = problem.objective.coeffs
    extended = []
    start = n
    for k, form in enumerate(problem.constraints):
        a = _linear_coefficients(form, k)
        if not np.all(np.equal(np.mod(a, 1), 0)):
            raise UnsupportedConstraintError(
                f"Constraint {k} has non-integer coefficients"
            )
        row = np.zeros(total)
        row[:n] = a
        width = encoding.bits_per_constraint[k]
        row[start : start + width] = encoding.bit_coefficients[k]
        start += width
        extended.append(QuboProblem.from_linear(row, form.offset))

    equality_form = ConstrainedProblem(
        objective=QuboProblem(objective, problem.objective.offset),
        constraints=tuple(extended),
        bounds=problem.bounds,
        senses=(Sense.EQUAL,) * problem.num_constraints,
    )
    qubo = build_penalty_qubo(equality_form, encoding.penalty_weight)
    logger.debug(
        "slack QUBO: n=%d slack bits=%d lambda=%g",
        n,
        encoding.num_bits,
        encoding.penalty_weight,
    )
    return qubo


def decode_slack_solution(
    encoding: SlackEncoding, config: Sequence[int], n: int
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Split a slack-QUBO configuration into ``x`` and slack values.

    :param encoding: Encoding used to build the QUBO
    :type encoding: SlackEncoding
    :param config: Binary vector of length ``n + encoding.num_bits``
    :type config: Sequence[int]
    :param n: Number of original variables
    :type n: int
    :return: (original configuration, slack value z_k per constraint)
    :rtype: Tuple[Tuple[int, ...], Tuple[int, ...]]
    """
    full = validate_binary_config(config, n + encoding.num_bits)
    slacks = []
    start = n
    for coeffs in encoding.bit_coefficients:
        bits = full[start : start + len(coeffs)]
        slacks.append(int(np.dot(bits.astype(np.int64), coeffs)))
        start += len(coeffs)
    return tuple(int(v) for v in full[:n]), tuple(slacks)


def count_comparison(
    instance: QkpInstance, penalty_weight: Optional[float] = None
) -> TermCounts:
    """Quadratic terms of the relaxed QUBO versus the slack QUBO.

    The relaxed QUBO is counted at ``μ = 1``; any positive multiplier gives
    the same count since the capacity constraint is linear.

    :param instance: QKP instance
    :type instance: QkpInstance
    :param penalty_weight: λ of the slack QUBO
    :type penalty_weight: Optional[float]
    :return: (om_terms, slack_terms)
    :rtype: TermCounts
    """
    problem = to_constrained(instance)
    relaxed = build_relaxed_qubo(problem, np.ones(problem.num_constraints))
    slack = build_slack_qubo(problem, penalty_weight)
    return TermCounts(
        om_terms=count_quadratic_terms(relaxed),
        slack_terms=count_quadratic_terms(slack),
    )


def slack_variable_count(problem: ConstrainedProblem) -> int:
    """Variables of the slack QUBO, ``n + sum_k M_k``."""
    return problem.n + slack_encoding(problem).num_bits

