"""Projected subgradient ascent on the Lagrangian dual with sampling.

Each iteration builds the relaxed QUBO ``f_0 + sum_k mu_k F_k`` for the
current multipliers, samples it, estimates ``⟨f_0⟩`` and ``⟨F_k⟩`` from the
sample set, keeps the best feasible sample, and moves the multipliers along
the residual ``⟨F_k⟩ - C_k`` (projected onto ``mu >= 0`` for inequality
constraints). The naive variant replaces the sample set by the exact
minimizer of the relaxed QUBO.

Dependencies:
    - logging: Progress and stop-reason logging
    - dataclasses: State updates
    - numpy: Residual arithmetic
    - src.model.constrained: ConstrainedProblem, build_relaxed_qubo
    - src.samplers: Sampler interface, expectation, exact backend
    - src.core.resource_manager: WallClockBudget
    - src.core.seeds: Per-iteration sampler seeds
    - src.core.exceptions: ConfigError, DomainError,
      SubgradientVanishedError
"""

import logging
from dataclasses import replace
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import (
    ConfigError,
    DomainError,
    SubgradientVanishedError,
)
from src.core.resource_manager import WallClockBudget
from src.core.seeds import derive_seed
from src.model.constrained import (
    ConstrainedProblem,
    Sense,
    build_relaxed_qubo,
    validate_multipliers,
)
from src.ohzeki.state import (
    Expectations,
    FeasibleSolution,
    HistoryRow,
    SolveResult,
    SolverConfig,
    SolverState,
)
from src.samplers.base import Sampler, SampleSet, SamplerConfig, expectation
from src.samplers.exact import ExactSampler

logger = logging.getLogger(__name__)


def _signed_multipliers(mu: Any, senses: Sequence[Sense]) -> np.ndarray:
    # equality multipliers enter the relaxation with a minus sign
    signs = np.array([1.0 if s is Sense.LESS_EQUAL else -1.0 for s in senses])
    return signs * np.asarray(mu, dtype=np.float64)


def step_size(
    state: SolverState,
    expectations: Expectations,
    bounds: Any,
    upper_bound: float,
    fisher_dual: bool = False,
    senses: Optional[Sequence[Sense]] = None,
) -> float:
    """Step size of the multiplier update.

    ``eta = tau (UB - (⟨f_0⟩ + sum_k (⟨F_k⟩ - C_k))) / sum_k (⟨F_k⟩ - C_k)^2``.
    With ``fisher_dual`` the residual sum in the numerator is weighted by
    the multipliers, giving ``UB - L(mu)``.

    :param state: Current solver state (supplies tau and mu)
    :type state: SolverState
    :param expectations: Sample means ⟨f_0⟩ and ⟨F_k⟩
    :type expectations: Expectations
    :param bounds: Right-hand sides C_k
    :type bounds: Any
    :param upper_bound: Heuristic upper bound f_0^UB
    :type upper_bound: float
    :param fisher_dual: Use the multiplier-weighted numerator
    :type fisher_dual: bool
    :param senses: Constraint senses (needed only with ``fisher_dual``)
    :type senses: Optional[Sequence[Sense]]
    :return: Step size (may be negative)
    :rtype: float
    :raises SubgradientVanishedError: If every residual is zero
    """
    residuals = expectations.residuals(bounds)
    denominator = float(np.dot(residuals, residuals))
    if denominator == 0.0:
        raise SubgradientVanishedError(
            "Subgradient vanished: every constraint residual is zero"
        )
    if fisher_dual:
        weights = _signed_multipliers(
            state.mu,
            senses or [Sense.LESS_EQUAL] * len(state.mu),
        )
        correction = float(np.dot(weights, residuals))
    else:
        correction = float(residuals.sum())
    numerator = upper_bound - (expectations.objective + correction)
    return state.tau * numerator / denominator


def update_multipliers(
    state: SolverState,
    eta: float,
    expectations: Expectations,
    bounds: Any,
    senses: Sequence[Sense],
) -> SolverState:
    """Move the multipliers one step along the residuals.

    Inequality: ``mu_k <- max(0, mu_k + eta (⟨F_k⟩ - C_k))``.
    Equality: ``nu_k <- nu_k + eta (C_k - ⟨F_k⟩)``.

    :param state: Current solver state
    :type state: SolverState
    :param eta: Non-negative step size
    :type eta: float
    :param expectations: Sample means ⟨F_k⟩
    :type expectations: Expectations
    :param bounds: Right-hand sides C_k
    :type bounds: Any
    :param senses: Constraint senses
    :type senses: Sequence[Sense]
    :return: State with updated multipliers
    :rtype: SolverState
    :raises DomainError: If eta is negative
    """
    if eta < 0:
        raise DomainError(f"Step size must be non-negative, got {eta}")
    residuals = expectations.residuals(bounds)
    mu = state.mu_array
    inequality = np.array([s is Sense.LESS_EQUAL for s in senses])
    updated = np.where(
        inequality,
        np.maximum(0.0, mu + eta * residuals),
        mu - eta * residuals,
    )
    return replace(state, mu=tuple(float(m) for m in updated))


def compute_expectations(
    problem: ConstrainedProblem, samples: SampleSet
) -> Expectations:
    """Sample means of the objective and every constraint form.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :param samples: Samples of the relaxed model
    :type samples: SampleSet
    :return: ⟨f_0⟩ and ⟨F_k⟩
    :rtype: Expectations
    """
    return Expectations(
        objective=expectation(samples, problem.objective),
        constraints=tuple(
            expectation(samples, form) for form in problem.constraints
        ),
    )


def best_feasible_sample(
    problem: ConstrainedProblem, samples: SampleSet
) -> Optional[FeasibleSolution]:
    """Lowest-objective feasible configuration in a sample set.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :param samples: Sample set to scan
    :type samples: SampleSet
    :return: Best feasible sample, or None if none is feasible
    :rtype: Optional[FeasibleSolution]
    """
    mask = problem.feasible_mask(samples.configs)
    if not np.any(mask):
        return None
    candidates = samples.configs[mask]
    objectives = problem.objective_values(candidates)
    best = int(np.argmin(objectives))
    return FeasibleSolution(
        config=tuple(int(v) for v in candidates[best]),
        objective=float(objectives[best]),
    )


def initial_state(problem: ConstrainedProblem, config: SolverConfig) -> SolverState:
    """State before the first iteration.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :param config: Solver parameters
    :type config: SolverConfig
    :return: State with mu_init (default zeros) and tau_init
    :rtype: SolverState
    """
    mu = (
        np.zeros(problem.num_constraints)
        if config.mu_init is None
        else validate_multipliers(problem, config.mu_init)
    )
    return SolverState(mu=tuple(float(m) for m in mu), tau=config.tau_init)


def _stop_reason(
    state: SolverState, config: SolverConfig, budget: WallClockBudget
) -> Optional[str]:
    if state.iteration >= config.t_max:
        return "t_max"
    if state.tau < config.tau_min:
        return "tau_min"
    if budget.expired():
        return "timeout"
    return None


def _iterate(
    problem: ConstrainedProblem,
    state: SolverState,
    samples: SampleSet,
    config: SolverConfig,
    upper_bound: float,
) -> Tuple[SolverState, Expectations, bool]:
    """One iteration given the samples of the relaxed model.

    Returns the new state, the expectations and whether the residual norm
    fell below epsilon.
    """
    t = state.iteration + 1
    exp = compute_expectations(problem, samples)
    residuals = exp.residuals(problem.bounds)
    violation_norm = float(np.sqrt(np.dot(residuals, residuals)))
    weights = _signed_multipliers(state.mu, problem.senses)
    dual_value = exp.objective + float(np.dot(weights, residuals))
    relaxed_energy = float(
        np.dot(samples.weights, samples.energies) / samples.weights.sum()
    )

    candidate = best_feasible_sample(problem, samples)
    best = state.best_feasible
    improved = candidate is not None and (
        best is None or candidate.objective < best.objective
    )
    if improved:
        best = candidate

    converged = violation_norm < config.epsilon
    eta: Optional[float] = None
    next_state = replace(state, best_feasible=best)
    if not converged:
        raw = step_size(
            state,
            exp,
            problem.bounds,
            upper_bound,
            fisher_dual=config.fisher_dual,
            senses=problem.senses,
        )
        eta = abs(raw)
        next_state = update_multipliers(
            next_state, eta, exp, problem.bounds, problem.senses
        )
        assert np.all(next_state.mu_array[problem.inequality_mask] >= 0.0)

    row = HistoryRow(
        t=t,
        mu=state.mu,
        eta=eta,
        tau=state.tau,
        expectations=exp.constraints,
        objective_expectation=exp.objective,
        violation_norm=violation_norm,
        best_feasible_value=None if best is None else best.objective,
        dual_value=dual_value,
        relaxed_energy=relaxed_energy,
        improved=improved,
    )

    tau = state.tau
    count = 0 if improved else state.non_improve_count + 1
    if count >= config.non_improve_window:
        tau *= 0.5
        count = 0
        logger.info(
            "t=%d: no improvement for %d steps, tau -> %g",
            t,
            config.non_improve_window,
            tau,
        )

    next_state = replace(
        next_state,
        tau=tau,
        iteration=t,
        non_improve_count=count,
        history=state.history + (row,),
    )
    logger.debug(
        "t=%d mu=%s eta=%s tau=%g |g|=%.6g best=%s",
        t,
        list(row.mu),
        eta,
        row.tau,
        violation_norm,
        row.best_feasible_value,
    )
    return next_state, exp, converged


def solve(
    problem: ConstrainedProblem,
    sampler: Sampler,
    sampler_config: SamplerConfig,
    config: SolverConfig,
) -> SolveResult:
    """Run the sampling-based multiplier updates until a stop condition.

    Stops when ``t_max`` iterations are done, when tau drops below
    ``tau_min``, when the residual norm drops below ``epsilon``, or when
    the wall-clock budget is spent. Sampler seeds are derived from
    ``sampler_config.seed`` and the iteration number.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :param sampler: Sampling backend
    :type sampler: Sampler
    :param sampler_config: Sampler parameters
    :type sampler_config: SamplerConfig
    :param config: Solver parameters, ``upper_bound`` required
    :type config: SolverConfig
    :return: Best feasible solution, final multipliers, history, stop reason
    :rtype: SolveResult
    :raises ConfigError: If no upper bound is supplied
    """
    if config.upper_bound is None:
        raise ConfigError("solve requires an upper bound on the objective")
    upper_bound = float(config.upper_bound)
    budget = WallClockBudget(config.time_limit)
    state = initial_state(problem, config)
    last: Optional[Expectations] = None
    reason: Optional[str] = None

    while reason is None:
        reason = _stop_reason(state, config, budget)
        if reason is not None:
            break
        relaxed = build_relaxed_qubo(problem, state.mu)
        seed = derive_seed(sampler_config.seed, state.iteration + 1)
        samples = sampler.sample(relaxed, sampler_config.with_seed(seed))
        state, last, converged = _iterate(
            problem, state, samples, config, upper_bound
        )
        if converged:
            reason = "epsilon"

    assert reason is not None

    logger.info(
        "%s stopped after %d iterations (%s), best=%s",
        sampler.name,
        state.iteration,
        reason,
        None if state.best_feasible is None else state.best_feasible.objective,
    )
    return SolveResult(
        best_feasible=state.best_feasible,
        mu=state.mu,
        history=state.history,
        stop_reason=reason,
        final_state=state,
        last_expectations=last,
    )


def solve_naive(
    problem: ConstrainedProblem,
    config: SolverConfig,
    sampler_config: Optional[SamplerConfig] = None,
) -> SolveResult:
    """Subgradient loop on the exact minimizer of the relaxed QUBO.

    :param problem: Constrained problem with n ≤ ENUMERATION_MAX_N
    :type problem: ConstrainedProblem
    :param config: Solver parameters, ``upper_bound`` required
    :type config: SolverConfig
    :param sampler_config: Optional sampler parameters (mode forced to
        ``argmin``)
    :type sampler_config: Optional[SamplerConfig]
    :return: As :func:`solve`
    :rtype: SolveResult
    :raises CapacityError: If n exceeds the enumeration limit
    """
    base = sampler_config or SamplerConfig()
    argmin_config = replace(base, exact_mode="argmin")
    return solve(problem, ExactSampler(), argmin_config, config)
