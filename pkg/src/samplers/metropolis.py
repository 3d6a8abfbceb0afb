"""Single-spin-flip Metropolis sampler.

Each of the S chains starts from a uniformly random configuration, performs
``sweeps`` full sweeps at fixed inverse temperature and records its final
state. The chains are independent and advanced together as rows of one
array, so a sweep costs n vectorized site updates.

Dependencies:
    - logging: Debug tracing
    - numpy: Vectorized chain updates and random streams
    - src.samplers.base: Sampler interface, SamplerConfig, SampleSet
    - src.model.qubo: QuboProblem
"""

import logging

import numpy as np
import numpy.typing as npt

from src.model.qubo import QuboProblem
from src.samplers.base import Sampler, SampleSet, SamplerConfig

logger = logging.getLogger(__name__)


def flip_delta(
    coeffs: npt.NDArray[np.float64],
    states: npt.NDArray[np.float64],
    site: int,
) -> npt.NDArray[np.float64]:
    """Energy change of flipping ``site`` in every row of ``states``.

    :param coeffs: Symmetric QUBO matrix
    :type coeffs: numpy.ndarray
    :param states: S×n array of 0/1 floats
    :type states: numpy.ndarray
    :param site: Variable index
    :type site: int
    :return: Length-S energy differences
    :rtype: numpy.ndarray
    """
    x_i = states[:, site]
    diag = coeffs[site, site]
    cross = states @ coeffs[:, site] - diag * x_i
    return (1.0 - 2.0 * x_i) * (diag + 2.0 * cross)


def metropolis_sweeps(
    coeffs: npt.NDArray[np.float64],
    states: npt.NDArray[np.float64],
    beta: float,
    sweeps: int,
    rng: np.random.Generator,
    random_order: bool = False,
) -> None:
    """Run Metropolis sweeps in place on a batch of chains.

    :param coeffs: Symmetric QUBO matrix
    :type coeffs: numpy.ndarray
    :param states: S×n array of 0/1 floats, updated in place
    :type states: numpy.ndarray
    :param beta: Inverse temperature
    :type beta: float
    :param sweeps: Number of full sweeps
    :type sweeps: int
    :param rng: Random stream
    :type rng: numpy.random.Generator
    :param random_order: Visit sites in a fresh random order every sweep
    :type random_order: bool
    """
    num_chains, n = states.shape
    for _ in range(sweeps):
        sites = rng.permutation(n) if random_order else range(n)
        for site in sites:
            delta = flip_delta(coeffs, states, int(site))
            accept = rng.random(num_chains) < np.exp(
                np.minimum(0.0, -beta * delta)
            )
            states[accept, site] = 1.0 - states[accept, site]


class MetropolisSampler(Sampler):
    """Independent-restart Metropolis chains at fixed β."""

    name = "mcmc"

    def sample(self, problem: QuboProblem, config: SamplerConfig) -> SampleSet:
        """Draw S samples, one final state per chain.

        :param problem: Model to sample
        :type problem: QuboProblem
        :param config: Sampler parameters
        :type config: SamplerConfig
        :return: Aggregated samples
        :rtype: SampleSet
        """
        rng = np.random.default_rng(config.seed)
        states = rng.integers(
            0, 2, size=(config.num_samples, problem.n)
        ).astype(np.float64)
        metropolis_sweeps(
            problem.coeffs,
            states,
            config.beta,
            config.sweeps,
            rng,
            random_order=config.sweep_order == "random",
        )
        logger.debug(
            "mcmc: n=%d S=%d sweeps=%d beta=%g",
            problem.n,
            config.num_samples,
            config.sweeps,
            config.beta,
        )
        return SampleSet.from_draws(problem, states.astype(np.int8))


def sample_mcmc(problem: QuboProblem, config: SamplerConfig) -> SampleSet:
    """Sample with :class:`MetropolisSampler`.

    :param problem: Model to sample
    :type problem: QuboProblem
    :param config: Sampler parameters
    :type config: SamplerConfig
    :return: Aggregated samples
    :rtype: SampleSet
    """
    return MetropolisSampler().sample(problem, config)
