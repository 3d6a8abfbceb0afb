"""Simulated quantum annealing by path-integral Monte Carlo.

The Ising form of the model is replicated on P Trotter slices coupled
ferromagnetically along imaginary time with strength
``J_perp(Γ) = -(P / 2β) ln tanh(βΓ / P)``. The transverse field Γ is
lowered linearly over the sweep budget; each sweep updates every spin of
every slice with the Metropolis rule at inverse temperature β/P. One
configuration per run is read out from a uniformly random slice (or the
lowest-energy slice with ``readout="best"``).

Dependencies:
    - logging: Debug tracing
    - math: Logarithm and tanh of scalars
    - numpy: Vectorized replica updates and random streams
    - src.model.qubo: QuboProblem and Ising conversion
    - src.samplers.base: Sampler interface, SamplerConfig, SampleSet
"""

import logging
import math

import numpy as np
import numpy.typing as npt

from src.model.qubo import QuboProblem, qubo_to_ising
from src.samplers.base import Sampler, SampleSet, SamplerConfig

logger = logging.getLogger(__name__)


def trotter_coupling(beta: float, gamma: float, trotter: int) -> float:
    """Inter-slice coupling ``-(P / 2β) ln tanh(βΓ / P)``.

    :param beta: Inverse temperature
    :type beta: float
    :param gamma: Transverse field
    :type gamma: float
    :param trotter: Slice count P
    :type trotter: int
    :return: Ferromagnetic coupling in energy units
    :rtype: float
    """
    return -(trotter / (2.0 * beta)) * math.log(
        math.tanh(beta * gamma / trotter)
    )


def _slice_energies(
    couplings: npt.NDArray[np.float64],
    fields: npt.NDArray[np.float64],
    spins: npt.NDArray[np.float64],
) -> npt.NDArray[np.float64]:
    # classical energy of every (run, slice), offset omitted
    pair = 0.5 * np.einsum("rpi,ij,rpj->rp", spins, couplings, spins)
    return pair + spins @ fields


class SqaSampler(Sampler):
    """Path-integral simulated quantum annealing sampler."""

    name = "sqa"

    def sample(self, problem: QuboProblem, config: SamplerConfig) -> SampleSet:
        """Draw S samples, one per independent annealing run.

        :param problem: Model to sample
        :type problem: QuboProblem
        :param config: Sampler parameters
        :type config: SamplerConfig
        :return: Aggregated samples
        :rtype: SampleSet
        """
        ising = qubo_to_ising(problem)
        couplings, fields = ising.couplings, ising.fields
        runs, slices, n = config.num_samples, config.trotter, problem.n
        beta_slice = config.beta / slices
        rng = np.random.default_rng(config.seed)

        spins = rng.choice(
            np.array([-1.0, 1.0]), size=(runs, slices, n)
        )
        gammas = np.linspace(config.gamma_start, config.gamma_end, config.sweeps)
        random_order = config.sweep_order == "random"

        for gamma in gammas:
            j_perp = (
                trotter_coupling(config.beta, float(gamma), slices)
                if slices > 1
                else 0.0
            )
            for k in range(slices):
                up, down = (k + 1) % slices, (k - 1) % slices
                layer = spins[:, k, :]
                sites = rng.permutation(n) if random_order else range(n)
                for site in sites:
                    s = layer[:, site]
                    local = layer @ couplings[:, site] + fields[site]
                    delta = -2.0 * s * local
                    if slices > 1:
                        neighbours = spins[:, up, site] + spins[:, down, site]
                        delta = delta + 2.0 * j_perp * s * neighbours
                    accept = rng.random(runs) < np.exp(
                        np.minimum(0.0, -beta_slice * delta)
                    )
                    layer[accept, site] = -layer[accept, site]

        if config.readout == "best":
            chosen = np.argmin(_slice_energies(couplings, fields, spins), axis=1)
        else:
            chosen = rng.integers(0, slices, size=runs)
        readout = spins[np.arange(runs), chosen, :]
        logger.debug(
            "sqa: n=%d S=%d P=%d sweeps=%d gamma=%g->%g",
            n,
            runs,
            slices,
            config.sweeps,
            config.gamma_start,
            config.gamma_end,
        )
        draws = ((readout + 1.0) / 2.0).astype(np.int8)
        return SampleSet.from_draws(problem, draws)


def sample_sqa(problem: QuboProblem, config: SamplerConfig) -> SampleSet:
    """Sample with :class:`SqaSampler`.

    :param problem: Model to sample
    :type problem: QuboProblem
    :param config: Sampler parameters
    :type config: SamplerConfig
    :return: Aggregated samples
    :rtype: SampleSet
    """
    return SqaSampler().sample(problem, config)
