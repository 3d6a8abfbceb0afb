"""Tests for the KKT diagnostics.

Dependencies:
    - pytest: Testing framework
    - numpy: Constraint forms
    - src.ohzeki.kkt: kkt_report, final_kkt_report
    - src.ohzeki.solver: Runs whose last iteration is reported
"""

import numpy as np
import pytest

from src.model.constrained import ConstrainedProblem, Sense
from src.model.qubo import QuboProblem
from src.ohzeki.kkt import final_kkt_report, kkt_report
from src.ohzeki.solver import solve
from src.ohzeki.state import Expectations, SolverConfig, SolverState
from src.samplers.base import SamplerConfig
from src.samplers.exact import ExactSampler


def _problem(senses: tuple) -> ConstrainedProblem:
    form = QuboProblem.from_linear([1.0, 1.0])
    return ConstrainedProblem(
        objective=QuboProblem.zeros(2),
        constraints=(form,) * len(senses),
        bounds=np.full(len(senses), 12.0),
        senses=senses,
    )


class TestKktReport:
    """Test per-constraint KKT quantities."""

    def test_inactive_constraint_with_zero_multiplier(self) -> None:
        """Test mu=0 and slack 2 give residual 0."""
        report = kkt_report(
            _problem((Sense.LESS_EQUAL,)),
            SolverState(mu=(0.0,), tau=0.5),
            Expectations(objective=0.0, constraints=(10.0,)),
        )
        entry = report.entries[0]
        assert entry.slack == 2.0
        assert entry.violation == 0.0
        assert entry.residual == 0.0
        assert report.signs_ok

    def test_active_constraint_any_multiplier(self) -> None:
        """Test <F>=C gives residual 0 regardless of mu."""
        report = kkt_report(
            _problem((Sense.LESS_EQUAL,)),
            SolverState(mu=(3.5,), tau=0.5),
            Expectations(objective=0.0, constraints=(12.0,)),
        )
        assert report.entries[0].residual == 0.0
        assert report.max_residual == 0.0

    def test_violated_constraint(self) -> None:
        """Test violation 3 with mu=2 leaves residual 6."""
        report = kkt_report(
            _problem((Sense.LESS_EQUAL,)),
            SolverState(mu=(2.0,), tau=0.5),
            Expectations(objective=0.0, constraints=(15.0,)),
        )
        entry = report.entries[0]
        assert entry.violation == 3.0
        assert entry.slack == 0.0
        assert entry.residual == pytest.approx(6.0)

    def test_negative_multiplier_fails_sign_check(self) -> None:
        """Test a negative inequality multiplier is flagged."""
        report = kkt_report(
            _problem((Sense.LESS_EQUAL,)),
            SolverState(mu=(-1.0,), tau=0.5),
            Expectations(objective=0.0, constraints=(12.0,)),
        )
        assert not report.signs_ok

    def test_equality_reports_absolute_violation(self) -> None:
        """Test equality rows skip sign and slackness checks."""
        report = kkt_report(
            _problem((Sense.LESS_EQUAL, Sense.EQUAL)),
            SolverState(mu=(0.0, -4.0), tau=0.5),
            Expectations(objective=0.0, constraints=(10.0, 9.5)),
        )
        equality = report.entries[1]
        assert equality.sign_ok
        assert equality.violation == 2.5
        assert equality.residual == 0.0
        assert report.signs_ok

    def test_to_dict(self) -> None:
        """Test the mapping lists one entry per constraint."""
        report = kkt_report(
            _problem((Sense.LESS_EQUAL, Sense.LESS_EQUAL)),
            SolverState(mu=(0.0, 1.0), tau=0.5),
            Expectations(objective=0.0, constraints=(10.0, 13.0)),
        )
        payload = report.to_dict()
        assert [entry["index"] for entry in payload["entries"]] == [0, 1]
        assert payload["entries"][1]["residual"] == pytest.approx(1.0)


def _identical_items() -> ConstrainedProblem:
    """Four items of profit 5 and weight 4 under capacity 8."""
    return ConstrainedProblem(
        objective=QuboProblem.from_linear([-5.0] * 4),
        constraints=(QuboProblem.from_linear([4.0] * 4),),
        bounds=np.array([8.0]),
        senses=(Sense.LESS_EQUAL,),
    )


class TestKktAtTermination:
    """Test the report built from a finished run."""

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_epsilon_stop_bounds_residual(self, seed: int) -> None:
        """Test residual <= mu * epsilon once the norm falls below epsilon.

        At mu=1.25 every item has zero relaxed energy, so ⟨F⟩ sits at C=8
        up to sampling noise of about 0.03.
        """
        problem = _identical_items()
        epsilon = 0.15
        result = solve(
            problem,
            ExactSampler(),
            SamplerConfig(beta=1.0, num_samples=20000, seed=seed),
            SolverConfig(upper_bound=-10.0, mu_init=(1.25,), epsilon=epsilon),
        )
        assert result.stop_reason == "epsilon"
        assert result.iterations == 1
        assert result.history[-1].eta is None
        assert result.mu == result.history[-1].mu == (1.25,)

        report = final_kkt_report(problem, result)
        assert report is not None
        assert report.signs_ok
        assert report.entries[0].multiplier == 1.25
        assert report.max_residual <= 1.25 * epsilon
        assert report.max_residual < 0.05 * 8.0
        assert all(min(row.mu) >= 0.0 for row in result.history)

    def test_pairs_last_samples_with_their_multipliers(
        self, two_item_problem: ConstrainedProblem
    ) -> None:
        """Test the report uses the last row's mu, not the updated one."""
        result = solve(
            two_item_problem,
            ExactSampler(),
            SamplerConfig(num_samples=200, seed=3),
            SolverConfig(upper_bound=-20.0, t_max=3),
        )
        assert result.stop_reason == "t_max"
        assert result.mu != result.history[-1].mu

        report = final_kkt_report(two_item_problem, result)
        assert report is not None
        entry = report.entries[0]
        assert entry.multiplier == result.history[-1].mu[0]
        mean = result.history[-1].expectations[0]
        assert entry.violation == pytest.approx(max(0.0, mean - 4.0))

    def test_no_iterations_gives_no_report(
        self, two_item_problem: ConstrainedProblem
    ) -> None:
        """Test a run stopped before sampling has nothing to report."""
        result = solve(
            two_item_problem,
            ExactSampler(),
            SamplerConfig(),
            SolverConfig(upper_bound=-20.0, time_limit=1e-9),
        )
        assert final_kkt_report(two_item_problem, result) is None
