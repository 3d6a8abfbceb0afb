"""Solver configuration, state, history rows and results.

Dependencies:
    - dataclasses: Immutable containers
    - numpy: Multiplier vectors
    - src.core.validation: Parameter checks
    - src.core.exceptions: ConfigError
    - src.config: Solver defaults
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
import numpy.typing as npt

from src.config import (
    DEFAULT_EPSILON,
    DEFAULT_NON_IMPROVE_WINDOW,
    DEFAULT_T_MAX,
    DEFAULT_TAU_INIT,
    DEFAULT_TAU_MIN,
    DEFAULT_TIME_LIMIT_SECONDS,
)
from src.core.exceptions import ConfigError
from src.core.validation import validate_at_least, validate_positive

FloatArray = npt.NDArray[np.float64]

STOP_REASONS = ("t_max", "tau_min", "epsilon", "timeout")


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of the multiplier-update loop.

    :param tau_init: Initial step scale τ
    :type tau_init: float
    :param tau_min: Stop once τ falls below this threshold
    :type tau_min: float
    :param t_max: Iteration cap
    :type t_max: int
    :param epsilon: Stop once the residual norm falls below this threshold
    :type epsilon: float
    :param non_improve_window: Iterations without improvement before τ halves
    :type non_improve_window: int
    :param mu_init: Initial multipliers, None meaning all zero
    :type mu_init: Optional[Tuple[float, ...]]
    :param upper_bound: Heuristic upper bound on the optimal objective
    :type upper_bound: Optional[float]
    :param fisher_dual: Weight the residual sum of the step rule by μ
    :type fisher_dual: bool
    :param time_limit: Wall-clock cap in seconds, None for no cap
    :type time_limit: Optional[float]
    """

    tau_init: float = DEFAULT_TAU_INIT
    tau_min: float = DEFAULT_TAU_MIN
    t_max: int = DEFAULT_T_MAX
    epsilon: float = DEFAULT_EPSILON
    non_improve_window: int = DEFAULT_NON_IMPROVE_WINDOW
    mu_init: Optional[Tuple[float, ...]] = None
    upper_bound: Optional[float] = None
    fisher_dual: bool = False
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT_SECONDS

    def __post_init__(self) -> None:
        validate_positive("tau_init", self.tau_init)
        validate_positive("tau_min", self.tau_min)
        validate_positive("epsilon", self.epsilon)
        validate_at_least("t_max", self.t_max, 1)
        validate_at_least("non_improve_window", self.non_improve_window, 1)
        if self.time_limit is not None:
            validate_positive("time_limit", self.time_limit)
        if self.mu_init is not None:
            object.__setattr__(
                self, "mu_init", tuple(float(m) for m in self.mu_init)
            )

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "SolverConfig":
        """Build from a mapping, rejecting unknown keys.

        :param values: Field values
        :type values: Mapping[str, Any]
        :return: Configuration
        :rtype: SolverConfig
        :raises ConfigError: On unknown keys
        """
        unknown = set(values) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"Unknown solver settings: {sorted(unknown)}")
        return cls(**dict(values))


@dataclass(frozen=True)
class Expectations:
    """Sample means of the objective and of each constraint form.

    :param objective: ⟨f_0⟩
    :type objective: float
    :param constraints: ⟨F_k⟩ for k = 1..K
    :type constraints: Tuple[float, ...]
    """

    objective: float
    constraints: Tuple[float, ...]

    def residuals(self, bounds: Any) -> FloatArray:
        """Return ``⟨F_k⟩ - C_k``.

        :param bounds: Right-hand sides C_k
        :type bounds: Any
        :return: Residual vector
        :rtype: numpy.ndarray
        """
        return np.asarray(self.constraints, dtype=np.float64) - np.asarray(
            bounds, dtype=np.float64
        )


@dataclass(frozen=True)
class FeasibleSolution:
    """A feasible configuration and its objective value."""

    config: Tuple[int, ...]
    objective: float


@dataclass(frozen=True)
class HistoryRow:
    """Record of one solver iteration.

    ``mu`` holds the multipliers the iteration sampled with; ``eta`` is
    None when the loop stopped on the residual norm before stepping.
    """

    t: int
    mu: Tuple[float, ...]
    eta: Optional[float]
    tau: float
    expectations: Tuple[float, ...]
    objective_expectation: float
    violation_norm: float
    best_feasible_value: Optional[float]
    dual_value: float
    relaxed_energy: float
    improved: bool

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to a JSON-ready mapping."""
        return {
            "t": self.t,
            "mu": list(self.mu),
            "eta": self.eta,
            "tau": self.tau,
            "expectations": list(self.expectations),
            "objective_expectation": self.objective_expectation,
            "violation_norm": self.violation_norm,
            "best_feasible_value": self.best_feasible_value,
            "dual_value": self.dual_value,
            "relaxed_energy": self.relaxed_energy,
            "improved": self.improved,
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "HistoryRow":
        """Inverse of :meth:`to_dict`."""
        return cls(
            t=int(payload["t"]),
            mu=tuple(payload["mu"]),
            eta=payload["eta"],
            tau=float(payload["tau"]),
            expectations=tuple(payload["expectations"]),
            objective_expectation=float(payload["objective_expectation"]),
            violation_norm=float(payload["violation_norm"]),
            best_feasible_value=payload["best_feasible_value"],
            dual_value=float(payload["dual_value"]),
            relaxed_energy=float(payload["relaxed_energy"]),
            improved=bool(payload["improved"]),
        )


@dataclass(frozen=True)
class SolverState:
    """Multipliers, step scale and progress of the loop.

    :param mu: Multipliers (non-negative on inequality constraints)
    :type mu: Tuple[float, ...]
    :param tau: Current step scale
    :type tau: float
    :param iteration: Completed iterations
    :type iteration: int
    :param best_feasible: Best feasible sample so far
    :type best_feasible: Optional[FeasibleSolution]
    :param non_improve_count: Iterations since the last improvement or
        halving
    :type non_improve_count: int
    :param history: One row per completed iteration
    :type history: Tuple[HistoryRow, ...]
    """

    mu: Tuple[float, ...]
    tau: float
    iteration: int = 0
    best_feasible: Optional[FeasibleSolution] = None
    non_improve_count: int = 0
    history: Tuple[HistoryRow, ...] = field(default_factory=tuple)

    @property
    def mu_array(self) -> FloatArray:
        """Multipliers as a float64 vector."""
        return np.asarray(self.mu, dtype=np.float64)


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver run.

    :param best_feasible: Best feasible configuration found, if any
    :type best_feasible: Optional[FeasibleSolution]
    :param mu: Final multipliers
    :type mu: Tuple[float, ...]
    :param history: Per-iteration records
    :type history: Tuple[HistoryRow, ...]
    :param stop_reason: One of ``t_max``, ``tau_min``, ``epsilon``,
        ``timeout``
    :type stop_reason: str
    :param final_state: State at termination
    :type final_state: SolverState
    :param last_expectations: Expectations of the final iteration
    :type last_expectations: Optional[Expectations]
    """

    best_feasible: Optional[FeasibleSolution]
    mu: Tuple[float, ...]
    history: Tuple[HistoryRow, ...]
    stop_reason: str
    final_state: SolverState
    last_expectations: Optional[Expectations] = None

    @property
    def iterations(self) -> int:
        """Number of completed iterations."""
        return len(self.history)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to a JSON-ready mapping."""
        best: Optional[Dict[str, Any]] = None
        if self.best_feasible is not None:
            best = {
                "config": list(self.best_feasible.config),
                "objective": self.best_feasible.objective,
            }
        history: List[Dict[str, Any]] = [row.to_dict() for row in self.history]
        return {
            "best_feasible": best,
            "mu": list(self.mu),
            "stop_reason": self.stop_reason,
            "iterations": self.iterations,
            "history": history,
        }
