"""Name-based lookup of sampler backends.

Dependencies:
    - src.samplers: Metropolis, SQA and exact backends
    - src.core.exceptions: ConfigError
"""

from typing import Dict, Type

from src.core.exceptions import ConfigError
from src.samplers.base import Sampler
from src.samplers.exact import ExactSampler
from src.samplers.metropolis import MetropolisSampler
from src.samplers.sqa import SqaSampler

SAMPLERS: Dict[str, Type[Sampler]] = {
    MetropolisSampler.name: MetropolisSampler,
    SqaSampler.name: SqaSampler,
    ExactSampler.name: ExactSampler,
}


def get_sampler(name: str) -> Sampler:
    """Instantiate a sampler backend by name.

    :param name: One of ``mcmc``, ``sqa``, ``exact``
    :type name: str
    :return: Sampler instance
    :rtype: Sampler
    :raises ConfigError: On an unknown name
    """
    try:
        return SAMPLERS[name]()
    except KeyError as e:
        raise ConfigError(
            f"Unknown sampler '{name}', expected one of {sorted(SAMPLERS)}"
        ) from e
