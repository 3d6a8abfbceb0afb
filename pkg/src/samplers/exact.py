"""Exhaustive-enumeration sampler and Boltzmann diagnostics.

Configurations are indexed so that integer order equals lexicographic order
(``x_0`` is the most significant bit). The exact backend either draws
i.i.d. samples from the Boltzmann distribution or returns the minimizer with
full weight.

Dependencies:
    - logging: Debug tracing
    - numpy: Chunked enumeration and categorical draws
    - scipy.special: logsumexp for normalized Boltzmann weights
    - src.core.resource_manager: Memory guard
    - src.core.exceptions: CapacityError
    - src.model.qubo: QuboProblem
    - src.samplers.base: Sampler interface, SamplerConfig, SampleSet
    - src.config: ENUMERATION_MAX_N, ENUMERATION_CHUNK
"""

import logging

import numpy as np
import numpy.typing as npt
from scipy.special import logsumexp

from src.config import ENUMERATION_CHUNK, ENUMERATION_MAX_N
from src.core.exceptions import CapacityError
from src.core.resource_manager import monitor_memory
from src.model.qubo import QuboProblem
from src.samplers.base import Sampler, SampleSet, SamplerConfig

logger = logging.getLogger(__name__)


def index_to_configs(
    indices: npt.NDArray[np.int64], n: int
) -> npt.NDArray[np.int8]:
    """Binary configurations for enumeration indices.

    :param indices: Integers in [0, 2**n)
    :type indices: numpy.ndarray
    :param n: Variable count
    :type n: int
    :return: len(indices)×n int8 array, x_0 most significant
    :rtype: numpy.ndarray
    """
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((indices[:, None] >> shifts) & 1).astype(np.int8)


def configs_to_index(configs: npt.NDArray[np.int8]) -> npt.NDArray[np.int64]:
    """Inverse of :func:`index_to_configs`.

    :param configs: m×n binary array
    :type configs: numpy.ndarray
    :return: Enumeration indices
    :rtype: numpy.ndarray
    """
    n = configs.shape[1]
    weights = np.left_shift(1, np.arange(n - 1, -1, -1, dtype=np.int64))
    return np.asarray(configs.astype(np.int64) @ weights)


def check_enumerable(n: int) -> None:
    """Raise unless 2**n states can be enumerated.

    :param n: Variable count
    :type n: int
    :raises CapacityError: If n exceeds ENUMERATION_MAX_N
    """
    if n > ENUMERATION_MAX_N:
        raise CapacityError(
            f"Enumeration supports at most {ENUMERATION_MAX_N} variables, "
            f"got {n}"
        )


@monitor_memory
def enumerate_energies(problem: QuboProblem) -> npt.NDArray[np.float64]:
    """Energy of every configuration in enumeration order.

    :param problem: Model with n ≤ ENUMERATION_MAX_N
    :type problem: QuboProblem
    :return: Length-2**n energy vector, offset included
    :rtype: numpy.ndarray
    :raises CapacityError: If n is too large
    """
    n = problem.n
    check_enumerable(n)
    total = 1 << n
    energies = np.empty(total, dtype=np.float64)
    for start in range(0, total, ENUMERATION_CHUNK):
        stop = min(total, start + ENUMERATION_CHUNK)
        x = index_to_configs(np.arange(start, stop, dtype=np.int64), n)
        xf = x.astype(np.float64)
        energies[start:stop] = np.einsum("ij,ij->i", xf @ problem.coeffs, xf)
    return energies + problem.offset


def boltzmann_distribution(
    problem: QuboProblem, beta: float
) -> npt.NDArray[np.float64]:
    """Exact Boltzmann probabilities in enumeration order.

    :param problem: Model with n ≤ ENUMERATION_MAX_N
    :type problem: QuboProblem
    :param beta: Inverse temperature
    :type beta: float
    :return: Length-2**n probability vector
    :rtype: numpy.ndarray
    """
    log_weights = -beta * enumerate_energies(problem)
    return np.exp(log_weights - logsumexp(log_weights))


def empirical_distribution(samples: SampleSet) -> npt.NDArray[np.float64]:
    """Sample frequencies in enumeration order.

    :param samples: Sample set over n ≤ ENUMERATION_MAX_N variables
    :type samples: SampleSet
    :return: Length-2**n frequency vector
    :rtype: numpy.ndarray
    """
    n = samples.configs.shape[1]
    check_enumerable(n)
    freq = np.zeros(1 << n, dtype=np.float64)
    np.add.at(freq, configs_to_index(samples.configs), samples.weights)
    return freq / samples.weights.sum()


def total_variation(
    samples: SampleSet, problem: QuboProblem, beta: float
) -> float:
    """Total-variation distance between samples and exact Boltzmann.

    :param samples: Sample set
    :type samples: SampleSet
    :param problem: Model the samples target
    :type problem: QuboProblem
    :param beta: Inverse temperature
    :type beta: float
    :return: ``1/2 sum |p_emp - p_exact|``
    :rtype: float
    """
    exact = boltzmann_distribution(problem, beta)
    return 0.5 * float(np.abs(empirical_distribution(samples) - exact).sum())


class ExactSampler(Sampler):
    """Enumeration backend, ``boltzmann`` or ``argmin`` mode."""

    name = "exact"

    def sample(self, problem: QuboProblem, config: SamplerConfig) -> SampleSet:
        """Draw exact samples or return the minimizer with weight S.

        :param problem: Model with n ≤ ENUMERATION_MAX_N
        :type problem: QuboProblem
        :param config: Sampler parameters (``exact_mode`` selects the mode)
        :type config: SamplerConfig
        :return: Aggregated samples
        :rtype: SampleSet
        :raises CapacityError: If n is too large
        """
        energies = enumerate_energies(problem)
        if config.exact_mode == "argmin":
            best = np.array([int(np.argmin(energies))], dtype=np.int64)
            configs = index_to_configs(best, problem.n)
            return SampleSet(
                configs=configs,
                energies=energies[best],
                weights=np.array([config.num_samples], dtype=np.int64),
            )

        rng = np.random.default_rng(config.seed)
        log_weights = -config.beta * energies
        probs = np.exp(log_weights - logsumexp(log_weights))
        draws = rng.choice(
            energies.shape[0], size=config.num_samples, p=probs / probs.sum()
        )
        logger.debug(
            "exact: n=%d S=%d beta=%g", problem.n, config.num_samples, config.beta
        )
        return SampleSet.from_draws(
            problem, index_to_configs(draws.astype(np.int64), problem.n)
        )


def sample_exact(problem: QuboProblem, config: SamplerConfig) -> SampleSet:
    """Sample with :class:`ExactSampler`.

    :param problem: Model with n ≤ ENUMERATION_MAX_N
    :type problem: QuboProblem
    :param config: Sampler parameters
    :type config: SamplerConfig
    :return: Aggregated samples
    :rtype: SampleSet
    """
    return ExactSampler().sample(problem, config)
