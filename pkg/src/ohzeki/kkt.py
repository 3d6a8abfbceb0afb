"""KKT diagnostics at termination.

For an inequality constraint k the report lists the multiplier sign check,
the primal violation ``max(0, ⟨F_k⟩ - C_k)``, the slack
``xi_k = max(0, C_k - ⟨F_k⟩)`` and the complementary-slackness residual
``|mu_k (xi_k - C_k + ⟨F_k⟩)|``. Equality constraints report their absolute
violation; sign and slackness do not apply to them.

After a run that did not stop on epsilon the final multipliers have already
moved past the last sample set, so :func:`final_kkt_report` pairs the last
expectations with the multipliers recorded in the last history row.

Dependencies:
    - dataclasses: Report containers
    - src.model.constrained: ConstrainedProblem, Sense
    - src.ohzeki.state: SolverState, Expectations, SolveResult
"""

from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Tuple

from src.model.constrained import ConstrainedProblem, Sense
from src.ohzeki.state import Expectations, SolveResult, SolverState


@dataclass(frozen=True)
class KktEntry:
    """KKT quantities of one constraint."""

    index: int
    multiplier: float
    sign_ok: bool
    violation: float
    slack: float
    residual: float


@dataclass(frozen=True)
class KktReport:
    """KKT quantities of every constraint."""

    entries: Tuple[KktEntry, ...]

    @property
    def max_residual(self) -> float:
        """Largest complementary-slackness residual."""
        return max(entry.residual for entry in self.entries)

    @property
    def signs_ok(self) -> bool:
        """True when every inequality multiplier is non-negative."""
        return all(entry.sign_ok for entry in self.entries)

    def to_dict(self) -> Dict[str, List[Dict[str, Any]]]:
        """Serialize to a JSON-ready mapping."""
        return {"entries": [entry.__dict__.copy() for entry in self.entries]}


def kkt_report(
    problem: ConstrainedProblem,
    state: SolverState,
    expectations: Expectations,
) -> KktReport:
    """Evaluate sign, feasibility and complementary slackness.

    :param problem: Constrained problem
    :type problem: ConstrainedProblem
    :param state: Solver state supplying the multipliers
    :type state: SolverState
    :param expectations: ⟨F_k⟩ at which to evaluate
    :type expectations: Expectations
    :return: Per-constraint report
    :rtype: KktReport
    """
    entries: List[KktEntry] = []
    for k, (mu, mean, bound, sense) in enumerate(
        zip(state.mu, expectations.constraints, problem.bounds, problem.senses)
    ):
        bound = float(bound)
        if sense is Sense.EQUAL:
            entries.append(
                KktEntry(k, mu, True, abs(mean - bound), 0.0, 0.0)
            )
            continue
        slack = max(0.0, bound - mean)
        entries.append(
            KktEntry(
                index=k,
                multiplier=mu,
                sign_ok=mu >= 0.0,
                violation=max(0.0, mean - bound),
                slack=slack,
                residual=abs(mu * (slack - bound + mean)),
            )
        )
    return KktReport(tuple(entries))


def final_kkt_report(
    problem: ConstrainedProblem, result: SolveResult
) -> Optional[KktReport]:
    """KKT report of the last sampled iteration of a run.

    :param problem: Constrained problem the run solved
    :type problem: ConstrainedProblem
    :param result: Solver outcome
    :type result: SolveResult
    :return: Report at the last row's multipliers, None without iterations
    :rtype: Optional[KktReport]
    """
    if not result.history or result.last_expectations is None:
        return None
    sampled = replace(result.final_state, mu=result.history[-1].mu)
    return kkt_report(problem, sampled, result.last_expectations)
