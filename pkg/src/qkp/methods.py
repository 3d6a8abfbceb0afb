"""Dispatch of the benchmark methods on a QKP instance.

``om_mcmc``, ``om_sqa`` and ``om_exact`` run the sampling-based multiplier
loop with the matching backend, ``naive`` runs the subgradient loop on the
exact minimizer and ``greedy`` is the single-shot heuristic. Every
multiplier loop without an explicit upper bound uses the negated greedy
profit.

Dependencies:
    - dataclasses: Outcome container and config replacement
    - src.ohzeki: solve, solve_naive, SolverConfig
    - src.samplers: SamplerConfig and backends
    - src.qkp: instance conversion and greedy
"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

from src.config import DEFAULT_SQA_SAMPLES
from src.core.exceptions import ConfigError
from src.ohzeki.solver import solve, solve_naive
from src.ohzeki.state import SolveResult, SolverConfig
from src.qkp.greedy import greedy
from src.qkp.instance import QkpInstance, to_constrained
from src.samplers.base import SamplerConfig
from src.samplers.registry import get_sampler

logger = logging.getLogger(__name__)

METHOD_BACKENDS: Dict[str, str] = {
    "om_mcmc": "mcmc",
    "om_sqa": "sqa",
    "om_exact": "exact",
}
METHODS: Tuple[str, ...] = (*METHOD_BACKENDS, "naive", "greedy")


@dataclass(frozen=True)
class MethodOutcome:
    """Result of one method on one instance.

    :param method: Method name
    :type method: str
    :param config: Best feasible configuration, None if none was found
    :type config: Optional[Tuple[int, ...]]
    :param profit: Its profit, None if none was found
    :type profit: Optional[int]
    :param iterations: Multiplier updates performed (0 for greedy)
    :type iterations: int
    :param result: Full solver result for iterative methods
    :type result: Optional[SolveResult]
    """

    method: str
    config: Optional[Tuple[int, ...]]
    profit: Optional[int]
    iterations: int = 0
    result: Optional[SolveResult] = None


def default_sampler_config(method: str) -> SamplerConfig:
    """Sampler defaults for a method (S=500 for SQA, S=1000 otherwise).

    :param method: Method name
    :type method: str
    :return: Sampler configuration
    :rtype: SamplerConfig
    """
    if method == "om_sqa":
        return SamplerConfig(num_samples=DEFAULT_SQA_SAMPLES)
    return SamplerConfig()


def solve_qkp(
    instance: QkpInstance,
    method: str,
    sampler_config: Optional[SamplerConfig] = None,
    solver_config: Optional[SolverConfig] = None,
) -> MethodOutcome:
    """Run one benchmark method.

    :param instance: QKP instance
    :type instance: QkpInstance
    :param method: One of :data:`METHODS`
    :type method: str
    :param sampler_config: Sampler parameters, defaults per method
    :type sampler_config: Optional[SamplerConfig]
    :param solver_config: Solver parameters
    :type solver_config: Optional[SolverConfig]
    :return: Outcome with the best feasible profit
    :rtype: MethodOutcome
    :raises ConfigError: If the method is unknown
    """
    if method not in METHODS:
        raise ConfigError(f"Unknown method '{method}', expected one of {METHODS}")

    heuristic = greedy(instance)
    if method == "greedy":
        return MethodOutcome(method, heuristic.config, heuristic.profit)

    config = solver_config or SolverConfig()
    if config.upper_bound is None:
        config = replace(config, upper_bound=-float(heuristic.profit))
    sampling = sampler_config or default_sampler_config(method)
    problem = to_constrained(instance)

    if method == "naive":
        result = solve_naive(problem, config, sampling)
    else:
        result = solve(
            problem, get_sampler(METHOD_BACKENDS[method]), sampling, config
        )

    best = result.best_feasible
    if best is None:
        logger.info("%s found no feasible solution (n=%d)", method, instance.n)
        return MethodOutcome(method, None, None, result.iterations, result)
    return MethodOutcome(
        method,
        best.config,
        int(round(-best.objective)),
        result.iterations,
        result,
    )
