"""QUBO and Ising models with energy evaluation and conversion.

A QUBO stores a symmetric matrix ``Q`` whose diagonal holds linear terms, so
the energy of a binary vector ``x`` is ``sum_ij Q[i][j] x_i x_j + offset``.
An Ising model uses the convention
``E(s) = 1/2 sum_{i != j} J[i][j] s_i s_j + sum_i h_i s_i + offset`` with
spins ``s = 2x - 1``.

Dependencies:
    - dataclasses: Immutable model containers
    - numpy: Dense coefficient storage and vectorized energies
    - src.core.validation: Shape and symmetry checks
    - src.core.exceptions: DimensionError, DomainError
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, Sequence

import numpy as np
import numpy.typing as npt

from src.core.exceptions import DimensionError, DomainError
from src.core.validation import (
    validate_binary_batch,
    validate_binary_config,
    validate_square_symmetric,
)

FloatArray = npt.NDArray[np.float64]


def _freeze(array: FloatArray) -> FloatArray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class QuboProblem:
    """Symmetric QUBO over ``n`` binary variables.

    :param coeffs: Symmetric n×n matrix (diagonal = linear terms)
    :type coeffs: numpy.ndarray
    :param offset: Constant included in every reported energy
    :type offset: float
    :param metadata: Constants carried alongside the model but excluded
        from its energy (e.g. ``dual_offset`` of a relaxed problem)
    :type metadata: Mapping[str, float]
    """

    coeffs: FloatArray
    offset: float = 0.0
    metadata: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        matrix = validate_square_symmetric(self.coeffs, "QUBO matrix")
        object.__setattr__(self, "coeffs", _freeze(matrix))
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(
            self, "metadata", MappingProxyType(dict(self.metadata))
        )

    @property
    def n(self) -> int:
        """Number of binary variables."""
        return int(self.coeffs.shape[0])

    @classmethod
    def zeros(cls, n: int) -> "QuboProblem":
        """Create the all-zero QUBO on n variables.

        :param n: Variable count
        :type n: int
        :return: Zero model
        :rtype: QuboProblem
        """
        return cls(np.zeros((n, n)))

    @classmethod
    def from_linear(
        cls, coefficients: Sequence[float], offset: float = 0.0
    ) -> "QuboProblem":
        """Create a purely linear form ``sum_i a_i x_i + offset``.

        :param coefficients: Linear coefficients a_i
        :type coefficients: Sequence[float]
        :param offset: Constant term
        :type offset: float
        :return: Diagonal model
        :rtype: QuboProblem
        """
        return cls(np.diag(np.asarray(coefficients, dtype=np.float64)), offset)

    def is_linear(self) -> bool:
        """Return True when every off-diagonal coefficient is zero."""
        return not np.any(self.coeffs - np.diag(np.diag(self.coeffs)))


@dataclass(frozen=True, eq=False)
class IsingProblem:
    """Ising model ``1/2 sᵀJs + hᵀs + offset`` over ±1 spins.

    :param couplings: Symmetric n×n matrix J with zero diagonal
    :type couplings: numpy.ndarray
    :param fields: Length-n longitudinal fields h
    :type fields: numpy.ndarray
    :param offset: Constant added to every energy
    :type offset: float
    """

    couplings: FloatArray
    fields: FloatArray
    offset: float = 0.0

    def __post_init__(self) -> None:
        couplings = validate_square_symmetric(self.couplings, "couplings")
        if np.any(np.diag(couplings)):
            raise DomainError("Ising couplings must have a zero diagonal")
        fields = np.array(self.fields, dtype=np.float64)
        if fields.shape != (couplings.shape[0],):
            raise DimensionError(
                f"fields of shape {fields.shape} do not match "
                f"{couplings.shape[0]} spins"
            )
        object.__setattr__(self, "couplings", _freeze(couplings))
        object.__setattr__(self, "fields", _freeze(fields))
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def n(self) -> int:
        """Number of spins."""
        return int(self.fields.shape[0])


def energy(problem: QuboProblem, config: Any) -> float:
    """Energy of one binary configuration, offset included.

    :param problem: QUBO model
    :type problem: QuboProblem
    :param config: Binary vector of length n
    :type config: Any
    :return: ``xᵀQx + offset``
    :rtype: float
    :raises DimensionError: If the length differs from n
    :raises DomainError: If entries are not binary
    """
    x = validate_binary_config(config, problem.n).astype(np.float64)
    return float(x @ problem.coeffs @ x) + problem.offset


def evaluate_forms(problem: QuboProblem, configs: Any) -> FloatArray:
    """Energies of a batch of configurations stacked row-wise.

    :param problem: QUBO model
    :type problem: QuboProblem
    :param configs: m×n array of 0/1 rows
    :type configs: Any
    :return: Length-m energy vector, offset included
    :rtype: numpy.ndarray
    """
    x = validate_binary_batch(configs, problem.n).astype(np.float64)
    return np.einsum("ij,ij->i", x @ problem.coeffs, x) + problem.offset


def ising_energy(problem: IsingProblem, spins: Any) -> float:
    """Energy of a ±1 spin vector, offset included.

    :param problem: Ising model
    :type problem: IsingProblem
    :param spins: Vector of ±1 values
    :type spins: Any
    :return: Ising energy
    :rtype: float
    :raises DimensionError: If the length differs from n
    :raises DomainError: If entries are not ±1
    """
    s = np.asarray(spins, dtype=np.float64)
    if s.shape != (problem.n,):
        raise DimensionError(
            f"Spin vector of shape {s.shape} does not match {problem.n} spins"
        )
    if not np.all(np.abs(s) == 1):
        raise DomainError("Spin entries must be -1 or +1")
    return (
        0.5 * float(s @ problem.couplings @ s)
        + float(problem.fields @ s)
        + problem.offset
    )


def qubo_to_ising(problem: QuboProblem) -> IsingProblem:
    """Convert a QUBO into the equivalent Ising model via ``x = (s+1)/2``.

    :param problem: QUBO model
    :type problem: QuboProblem
    :return: Ising model with identical energies
    :rtype: IsingProblem
    """
    q = problem.coeffs
    diagonal = np.diag(q)
    off = q - np.diag(diagonal)

    couplings = off / 2.0
    fields = diagonal / 2.0 + off.sum(axis=1) / 2.0
    offset = problem.offset + diagonal.sum() / 2.0 + off.sum() / 4.0
    return IsingProblem(couplings, fields, offset)


def ising_to_qubo(problem: IsingProblem) -> QuboProblem:
    """Convert an Ising model into the equivalent QUBO via ``s = 2x - 1``.

    :param problem: Ising model
    :type problem: IsingProblem
    :return: QUBO with identical energies
    :rtype: QuboProblem
    """
    j = problem.couplings
    h = problem.fields

    coeffs = 2.0 * j + np.diag(2.0 * h - 2.0 * j.sum(axis=1))
    offset = problem.offset - h.sum() + j.sum() / 2.0
    return QuboProblem(coeffs, offset)


def count_quadratic_terms(problem: QuboProblem) -> int:
    """Number of unordered pairs {i, j}, i ≠ j, with a nonzero coupling.

    :param problem: QUBO model
    :type problem: QuboProblem
    :return: Count of nonzero upper-triangular entries
    :rtype: int
    """
    return int(np.count_nonzero(np.triu(problem.coeffs, k=1)))


def to_triplets(problem: QuboProblem) -> List[List[float]]:
    """Sparse ``[i, j, value]`` triplets with i ≤ j.

    ``value`` is the polynomial coefficient of ``x_i x_j``: ``Q[i][i]`` on
    the diagonal and ``2 Q[i][j]`` for i < j.

    :param problem: QUBO model
    :type problem: QuboProblem
    :return: Triplets in row-major order, zeros omitted
    :rtype: List[List[float]]
    """
    rows, cols = np.nonzero(np.triu(problem.coeffs))
    triplets: List[List[float]] = []
    for i, j in zip(rows.tolist(), cols.tolist()):
        factor = 1.0 if i == j else 2.0
        triplets.append([i, j, factor * float(problem.coeffs[i, j])])
    return triplets


def from_triplets(
    n: int, triplets: Sequence[Sequence[float]], offset: float = 0.0
) -> QuboProblem:
    """Build a QUBO from ``[i, j, value]`` triplets (repeats accumulate).

    :param n: Variable count
    :type n: int
    :param triplets: Polynomial coefficients with i ≤ j
    :type triplets: Sequence[Sequence[float]]
    :param offset: Constant term
    :type offset: float
    :return: Symmetric model
    :rtype: QuboProblem
    :raises DimensionError: If an index is out of range or i > j
    """
    coeffs = np.zeros((n, n))
    for i_raw, j_raw, value in triplets:
        i, j = int(i_raw), int(j_raw)
        if not 0 <= i <= j < n:
            raise DimensionError(
                f"Triplet index ({i}, {j}) invalid for {n} variables"
            )
        if i == j:
            coeffs[i, i] += value
        else:
            coeffs[i, j] += value / 2.0
            coeffs[j, i] += value / 2.0
    return QuboProblem(coeffs, offset)


def qubo_to_dict(problem: QuboProblem) -> Dict[str, Any]:
    """Serialize to ``{"n", "q", "offset"}``.

    :param problem: QUBO model
    :type problem: QuboProblem
    :return: JSON-ready mapping
    :rtype: Dict[str, Any]
    """
    return {
        "n": problem.n,
        "q": to_triplets(problem),
        "offset": problem.offset,
    }


def qubo_from_dict(payload: Mapping[str, Any]) -> QuboProblem:
    """Inverse of :func:`qubo_to_dict`.

    :param payload: Mapping with ``n``, ``q`` and optional ``offset``
    :type payload: Mapping[str, Any]
    :return: QUBO model
    :rtype: QuboProblem
    """
    return from_triplets(
        int(payload["n"]), payload["q"], float(payload.get("offset", 0.0))
    )
