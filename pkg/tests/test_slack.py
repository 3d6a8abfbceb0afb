"""Tests for the slack-variable penalty QUBO and term counting.

Dependencies:
    - pytest: Testing framework
    - numpy: Toy problems and enumeration
    - src.slack.encoding: Encoding, QUBO builders and counts
"""

from itertools import product
from typing import Callable

import numpy as np
import pytest

from src.core.exceptions import (
    ConfigError,
    DomainError,
    UnsupportedConstraintError,
)
from src.model.constrained import ConstrainedProblem, Sense
from src.model.qubo import QuboProblem, energy
from src.qkp.exact import exact_solve
from src.qkp.instance import (
    QkpInstance,
    generate,
    is_feasible,
    profit,
    to_constrained,
)
from src.samplers.exact import enumerate_energies, index_to_configs
from src.slack.encoding import (
    bit_coefficients,
    build_penalty_qubo,
    build_slack_qubo,
    count_comparison,
    decode_slack_solution,
    default_penalty_weight,
    slack_encoding,
    slack_variable_count,
)


def _with_capacity(instance: QkpInstance, capacity: int) -> QkpInstance:
    return QkpInstance(
        profits=instance.profits,
        weights=instance.weights,
        capacity=capacity,
        density=instance.density,
        seed=instance.seed,
    )


class TestBitCoefficients:
    """Test the clipped binary encoding."""

    @pytest.mark.parametrize(
        "bound, expected",
        [
            (0, ()),
            (1, (1,)),
            (3, (1, 2)),
            (4, (1, 2, 1)),
            (50, (1, 2, 4, 8, 16, 19)),
        ],
    )
    def test_coefficients(self, bound: int, expected: tuple) -> None:
        """Test M = ceil(log2(C+1)) bits with a clipped last coefficient."""
        assert bit_coefficients(bound) == expected

    @pytest.mark.parametrize("bound", [1, 2, 7, 12, 50, 129])
    def test_covers_range_exactly(self, bound: int) -> None:
        """Test every value in [0, C] is encodable and nothing above."""
        coeffs = bit_coefficients(bound)
        reachable = {
            sum(c * b for c, b in zip(coeffs, bits))
            for bits in product((0, 1), repeat=len(coeffs))
        }
        assert reachable == set(range(bound + 1))

    def test_negative_bound(self) -> None:
        """Test DomainError for C < 0."""
        with pytest.raises(DomainError):
            bit_coefficients(-1)


class TestSlackEncoding:
    """Test encodings of whole problems."""

    def test_encoding_of_capacity_fifty(self) -> None:
        """Test N=8, c=50 needs 6 slack bits, 14 variables in total."""
        problem = to_constrained(_with_capacity(generate(8, 1.0, seed=0), 50))
        encoding = slack_encoding(problem)
        assert encoding.bits_per_constraint == (6,)
        assert encoding.max_values() == (50,)
        assert slack_variable_count(problem) == 14

    def test_default_penalty_weight(
        self, two_item_problem: ConstrainedProblem
    ) -> None:
        """Test lambda = 1 + max |objective coefficient|."""
        assert default_penalty_weight(two_item_problem) == 21.0
        assert slack_encoding(two_item_problem).penalty_weight == 21.0

    def test_rejects_equality_constraints(self) -> None:
        """Test only LESS_EQUAL constraints get slack bits."""
        problem = ConstrainedProblem(
            objective=QuboProblem.zeros(2),
            constraints=(QuboProblem.from_linear([1.0, 1.0]),),
            bounds=[1.0],
            senses=(Sense.EQUAL,),
        )
        with pytest.raises(UnsupportedConstraintError):
            slack_encoding(problem)

    def test_rejects_fractional_bound(self) -> None:
        """Test non-integer right-hand sides are unsupported."""
        problem = ConstrainedProblem(
            objective=QuboProblem.zeros(2),
            constraints=(QuboProblem.from_linear([1.0, 1.0]),),
            bounds=[1.5],
        )
        with pytest.raises(UnsupportedConstraintError):
            build_slack_qubo(problem)

    def test_rejects_quadratic_constraint(self) -> None:
        """Test a constraint with a pair term is unsupported."""
        problem = ConstrainedProblem(
            objective=QuboProblem.zeros(2),
            constraints=(QuboProblem(np.array([[1.0, 0.5], [0.5, 1.0]])),),
            bounds=[2.0],
        )
        with pytest.raises(UnsupportedConstraintError):
            build_slack_qubo(problem)

    def test_decode(self) -> None:
        """Test x and z are split off the extended configuration."""
        problem = to_constrained(
            QkpInstance(np.eye(2, dtype=int), np.array([1, 2]), capacity=3)
        )
        encoding = slack_encoding(problem)
        x, slacks = decode_slack_solution(encoding, (1, 0, 0, 1), 2)
        assert x == (1, 0)
        assert slacks == (2,)


class TestPenaltyQubo:
    """Test the squared-penalty construction."""

    def test_energy_matches_penalty_expression(
        self, random_qubo: Callable[[int, int], QuboProblem]
    ) -> None:
        """Test E(x) = f0(x) + lambda (a.x + o - C)^2 on every x."""
        objective = random_qubo(3, 7)
        form = QuboProblem.from_linear([2.0, -1.0, 3.0], offset=0.5)
        problem = ConstrainedProblem(
            objective=objective,
            constraints=(form,),
            bounds=[2.0],
            senses=(Sense.EQUAL,),
        )
        penalty = build_penalty_qubo(problem, 4.0)
        for bits in product((0, 1), repeat=3):
            residual = energy(form, bits) - 2.0
            expected = energy(objective, bits) + 4.0 * residual**2
            assert energy(penalty, bits) == pytest.approx(expected)

    def test_rejects_non_positive_weight(
        self, two_item_problem: ConstrainedProblem
    ) -> None:
        """Test lambda must be positive."""
        with pytest.raises(ConfigError):
            build_penalty_qubo(two_item_problem, 0.0)

    def test_minimizer_solves_toy_problem(self) -> None:
        """Test the slack QUBO argmin is a feasible optimum for n=3."""
        instance = QkpInstance(
            profits=np.array([[6, 2, 0], [2, 5, 3], [0, 3, 4]]),
            weights=np.array([2, 3, 2]),
            capacity=4,
        )
        problem = to_constrained(instance)
        weight = 10.0 * instance.total_profit
        qubo = build_slack_qubo(problem, weight)
        best = int(np.argmin(enumerate_energies(qubo)))
        config = index_to_configs(np.array([best]), qubo.n)[0]
        x, slacks = decode_slack_solution(
            slack_encoding(problem, weight), config, instance.n
        )
        optimum = exact_solve(instance)
        assert optimum is not None
        assert is_feasible(instance, x)
        assert profit(instance, x) == optimum.profit
        assert int(np.dot(x, instance.weights)) + slacks[0] == instance.capacity


class TestCountComparison:
    """Test quadratic-term counts of both formulations."""

    @pytest.mark.parametrize(
        "n, om_terms, slack_terms",
        [(8, 28, 91), (16, 120, 231), (32, 496, 703), (64, 2016, 2415)],
    )
    def test_dense_counts_at_capacity_fifty(
        self, n: int, om_terms: int, slack_terms: int
    ) -> None:
        """Test C(N, 2) relaxed terms against C(N + 6, 2) slack terms."""
        instance = _with_capacity(generate(n, 1.0, seed=2), 50)
        counts = count_comparison(instance)
        assert counts.om_terms == om_terms
        assert counts.slack_terms == slack_terms

    @pytest.mark.parametrize("n", [8, 16, 32, 64])
    @pytest.mark.parametrize("delta", [0.2, 0.6])
    def test_relaxed_terms_follow_density(self, n: int, delta: float) -> None:
        """Test the mean share of coupled pairs is delta within 0.03."""
        pairs = n * (n - 1) // 2
        counts = [
            count_comparison(_with_capacity(generate(n, delta, seed=s), 50))
            for s in range(100)
        ]
        full = (n + 6) * (n + 5) // 2
        assert all(c.slack_terms == full for c in counts)
        ratio = np.mean([c.om_terms for c in counts]) / pairs
        assert ratio == pytest.approx(delta, abs=0.03)

    @pytest.mark.parametrize("seed", range(6))
    def test_slack_never_has_fewer_terms(self, seed: int) -> None:
        """Test slack_terms >= om_terms on generated instances."""
        delta = (0.2, 0.6, 1.0)[seed % 3]
        counts = count_comparison(generate(16, delta, seed=seed))
        assert counts.slack_terms >= counts.om_terms
