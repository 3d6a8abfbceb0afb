"""Sampler configuration, sample sets and the abstract sampler interface.

Dependencies:
    - abc: Abstract base class support
    - dataclasses: Immutable configuration and result containers
    - numpy: Sample storage and weighted averages
    - src.model.qubo: QuboProblem and batch energies
    - src.core.validation: Parameter checks
    - src.config: Sampler defaults
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Mapping

import numpy as np
import numpy.typing as npt

from src.config import (
    DEFAULT_BETA,
    DEFAULT_GAMMA_END,
    DEFAULT_GAMMA_START,
    DEFAULT_MCMC_SAMPLES,
    DEFAULT_SWEEPS,
    DEFAULT_TROTTER,
)
from src.core.exceptions import ConfigError
from src.core.validation import (
    validate_at_least,
    validate_binary_batch,
    validate_positive,
)
from src.model.qubo import QuboProblem, evaluate_forms

READOUTS = ("random", "best")
SWEEP_ORDERS = ("sequential", "random")
EXACT_MODES = ("boltzmann", "argmin")


@dataclass(frozen=True)
class SamplerConfig:
    """Parameters shared by all sampler backends.

    :param beta: Inverse temperature
    :type beta: float
    :param num_samples: Samples per call (S)
    :type num_samples: int
    :param sweeps: Metropolis sweeps per chain, or annealing sweeps for SQA
    :type sweeps: int
    :param trotter: Trotter slice count (SQA only)
    :type trotter: int
    :param gamma_start: Initial transverse field (SQA only)
    :type gamma_start: float
    :param gamma_end: Final transverse field (SQA only)
    :type gamma_end: float
    :param seed: Seed of the random stream
    :type seed: int
    :param readout: SQA slice readout, ``random`` or ``best``
    :type readout: str
    :param sweep_order: Site order within a sweep, ``sequential`` or
        ``random``
    :type sweep_order: str
    :param exact_mode: Exact backend mode, ``boltzmann`` or ``argmin``
    :type exact_mode: str
    """

    beta: float = DEFAULT_BETA
    num_samples: int = DEFAULT_MCMC_SAMPLES
    sweeps: int = DEFAULT_SWEEPS
    trotter: int = DEFAULT_TROTTER
    gamma_start: float = DEFAULT_GAMMA_START
    gamma_end: float = DEFAULT_GAMMA_END
    seed: int = 0
    readout: str = "random"
    sweep_order: str = "sequential"
    exact_mode: str = "boltzmann"

    def __post_init__(self) -> None:
        validate_positive("beta", self.beta)
        validate_at_least("num_samples", self.num_samples, 1)
        validate_at_least("sweeps", self.sweeps, 1)
        validate_at_least("trotter", self.trotter, 1)
        validate_positive("gamma_start", self.gamma_start)
        validate_positive("gamma_end", self.gamma_end)
        if self.readout not in READOUTS:
            raise ConfigError(f"readout must be one of {READOUTS}")
        if self.sweep_order not in SWEEP_ORDERS:
            raise ConfigError(f"sweep_order must be one of {SWEEP_ORDERS}")
        if self.exact_mode not in EXACT_MODES:
            raise ConfigError(f"exact_mode must be one of {EXACT_MODES}")

    def with_seed(self, seed: int) -> "SamplerConfig":
        """Copy of this configuration with another seed.

        :param seed: New seed
        :type seed: int
        :return: Updated configuration
        :rtype: SamplerConfig
        """
        return replace(self, seed=seed)

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "SamplerConfig":
        """Build from a mapping, rejecting unknown keys.

        :param values: Field values
        :type values: Mapping[str, Any]
        :return: Configuration
        :rtype: SamplerConfig
        :raises ConfigError: On unknown keys
        """
        unknown = set(values) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"Unknown sampler settings: {sorted(unknown)}")
        return cls(**dict(values))


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Multiset of configurations drawn by one sampler call.

    :param configs: m×n int8 array of distinct configurations
    :type configs: numpy.ndarray
    :param energies: Energy of each configuration
    :type energies: numpy.ndarray
    :param weights: Multiplicity of each configuration
    :type weights: numpy.ndarray
    """

    configs: npt.NDArray[np.int8]
    energies: npt.NDArray[np.float64]
    weights: npt.NDArray[np.int64]

    @classmethod
    def from_draws(cls, problem: QuboProblem, draws: Any) -> "SampleSet":
        """Aggregate raw draws (one row per chain) into a sample set.

        Distinct rows keep the order of their first occurrence.

        :param problem: Model the draws were sampled from
        :type problem: QuboProblem
        :param draws: S×n binary array
        :type draws: Any
        :return: Aggregated sample set
        :rtype: SampleSet
        """
        batch = validate_binary_batch(draws, problem.n)
        unique, first, counts = np.unique(
            batch, axis=0, return_index=True, return_counts=True
        )
        order = np.argsort(first, kind="stable")
        configs = unique[order].astype(np.int8)
        return cls(
            configs=configs,
            energies=evaluate_forms(problem, configs),
            weights=counts[order].astype(np.int64),
        )

    @property
    def num_samples(self) -> int:
        """Total weight S."""
        return int(self.weights.sum())

    def to_dict(self) -> Dict[str, List[Any]]:
        """Serialize to ``{"configs", "energies", "weights"}``.

        :return: JSON-ready mapping
        :rtype: Dict[str, List[Any]]
        """
        return {
            "configs": self.configs.tolist(),
            "energies": self.energies.tolist(),
            "weights": self.weights.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "SampleSet":
        """Inverse of :meth:`to_dict`.

        :param payload: Mapping with configs, energies and weights
        :type payload: Mapping[str, Any]
        :return: Sample set
        :rtype: SampleSet
        """
        return cls(
            configs=np.asarray(payload["configs"], dtype=np.int8),
            energies=np.asarray(payload["energies"], dtype=np.float64),
            weights=np.asarray(payload["weights"], dtype=np.int64),
        )


def expectation(samples: SampleSet, form: QuboProblem) -> float:
    """Weight-averaged value of a form over a sample set.

    :param samples: Sample set
    :type samples: SampleSet
    :param form: QUBO-shaped function to average
    :type form: QuboProblem
    :return: ``sum_s w_s form(x_s) / sum_s w_s``
    :rtype: float
    :raises DimensionError: If the form's size differs from the samples'
    """
    values = evaluate_forms(form, samples.configs)
    return float(np.dot(samples.weights, values) / samples.weights.sum())


class Sampler(ABC):
    """Abstract base class defining the sampler interface.

    Implementations draw ``config.num_samples`` configurations that
    approximate the Boltzmann distribution of ``problem`` at
    ``config.beta``, deterministically for a given seed.
    """

    name: str = "abstract"

    @abstractmethod
    def sample(self, problem: QuboProblem, config: SamplerConfig) -> SampleSet:
        """Draw samples from the model.

        :param problem: Model to sample
        :type problem: QuboProblem
        :param config: Sampler parameters
        :type config: SamplerConfig
        :return: Aggregated samples
        :rtype: SampleSet
        """
