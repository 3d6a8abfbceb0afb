"""Tests for experiment plans, the resumable runner and report emission.

Dependencies:
    - pytest: Testing framework
    - unittest.mock: Patching the runner to prove cache reuse and failures
    - src.harness: Plans, runner, results and reports
"""

import json
from pathlib import Path
from unittest.mock import patch

import pytest

from src.core.exceptions import ConfigError, ReportIOError
from src.harness.plan import ExperimentPlan, load_plan
from src.harness.report import (
    REPORT_COLUMNS,
    curves_from_report,
    emit_report,
    format_summary,
    load_report,
    report_rows,
    summarize,
    summarize_cell,
    write_curves_csv,
)
from src.harness.results import CellResult, ExperimentReport, InstanceRecord
from src.harness.runner import (
    CELL_DIR,
    iteration_curves,
    run_plan,
    term_count_table,
)
from src.qkp.instance import QkpInstance, generate


def _greedy_plan(**overrides: object) -> ExperimentPlan:
    values = dict(
        sizes=(8,), densities=(0.2,), instances_per_cell=10, methods=("greedy",)
    )
    values.update(overrides)
    return ExperimentPlan(**values)  # type: ignore[arg-type]


def _iterative_plan() -> ExperimentPlan:
    return ExperimentPlan(
        sizes=(6,),
        densities=(0.6,),
        instances_per_cell=3,
        methods=("om_exact", "naive", "greedy"),
        sampler_settings={"om_exact": {"num_samples": 50}},
        solver_settings={"om_exact": {"t_max": 4}, "naive": {"t_max": 4}},
        base_seed=5,
    )


def _cell(references: tuple, records: tuple, certified: bool = True) -> CellResult:
    return CellResult(
        n=4,
        delta=0.2,
        certified=certified,
        references=references,
        records=records,
    )


class TestExperimentPlan:
    """Test plan validation and seed derivation."""

    @pytest.mark.parametrize(
        "overrides",
        [
            {"sizes": ()},
            {"methods": ("gurobi",)},
            {"densities": (0.0,)},
            {"instances_per_cell": 0},
            {"oracle": "cplex"},
            {"sampler_settings": {"om_mcmc": {"beta": 1.0}}},
            {"methods": ("om_mcmc",), "sampler_settings": {"om_mcmc": {"beta": -1}}},
            {"methods": ("naive",), "solver_settings": {"naive": {"step": 1}}},
        ],
    )
    def test_rejects_invalid_plans(self, overrides: dict) -> None:
        """Test ConfigError for empty grids and bad method settings."""
        with pytest.raises(ConfigError):
            _greedy_plan(**overrides)

    def test_method_overrides(self) -> None:
        """Test overrides apply on top of per-method defaults."""
        plan = _iterative_plan()
        config = plan.sampler_config("om_exact", seed=9)
        assert (config.num_samples, config.seed) == (50, 9)
        assert plan.sampler_config("naive", seed=1).num_samples == 1000
        assert plan.solver_config("naive").t_max == 4

    def test_instance_and_method_seeds(self) -> None:
        """Test instance seeds depend on the cell and method seeds on the name."""
        plan = _greedy_plan()
        seed = plan.instance_seed(8, 0, 3)
        assert seed == plan.instance_seed(8, 0, 3)
        assert seed != plan.instance_seed(8, 0, 4)
        assert plan.method_seed(seed, "om_mcmc") != plan.method_seed(seed, "om_sqa")

    def test_cell_key_tracks_content(self) -> None:
        """Test equal plans share keys and a new base seed changes them."""
        assert _greedy_plan().cell_key(8, 0) == _greedy_plan().cell_key(8, 0)
        assert _greedy_plan().cell_key(8, 0) != _greedy_plan(
            base_seed=1
        ).cell_key(8, 0)

    def test_plan_file_round_trip(self, tmp_path: Path) -> None:
        """Test a plan written as JSON loads back equal."""
        plan = _iterative_plan()
        path = tmp_path / "plan.json"
        path.write_text(json.dumps(plan.to_dict()), encoding="utf-8")
        assert load_plan(path) == plan

    def test_plan_file_rejects_unknown_fields(self, tmp_path: Path) -> None:
        """Test unknown plan keys are reported."""
        path = tmp_path / "plan.json"
        path.write_text(json.dumps({"sizes": [8], "budget": 3}), encoding="utf-8")
        with pytest.raises(ConfigError):
            load_plan(path)


class TestRunPlan:
    """Test batch execution."""

    def test_greedy_only_plan(self) -> None:
        """Test 10 greedy records in one certified cell."""
        report = run_plan(_greedy_plan())
        assert len(report.cells) == 1
        cell = report.cells[0]
        assert cell.certified
        assert len(cell.records) == 10
        summary = summarize_cell(cell, "greedy")
        assert summary.instances == 10
        assert 0.0 <= summary.exact_rate <= 1.0

    def test_exact_rate_counts_zero_errors(self) -> None:
        """Test the exact rate equals the share of optimal profits."""
        report = run_plan(_greedy_plan())
        cell = report.cells[0]
        hits = sum(
            record.profit == cell.references[record.index]
            for record in cell.records_for("greedy")
        )
        assert summarize_cell(cell, "greedy").exact_rate == hits / 10

    def test_methods_share_instances(self) -> None:
        """Test records of every method cover the same instance indices."""
        report = run_plan(_iterative_plan())
        cell = report.cells[0]
        indices = {
            method: [r.index for r in cell.records_for(method)]
            for method in ("om_exact", "naive", "greedy")
        }
        assert indices["om_exact"] == indices["naive"] == indices["greedy"]
        assert all(
            len(r.best_profits) == r.iterations
            for r in cell.records_for("om_exact")
        )

    def test_uncertified_cell_uses_best_found(self) -> None:
        """Test references fall back to the best profit beyond the oracle."""
        report = run_plan(
            _greedy_plan(sizes=(26,), instances_per_cell=2, oracle="enumerate")
        )
        cell = report.cells[0]
        assert not cell.certified
        assert list(cell.references) == [r.profit for r in cell.records]
        assert summarize_cell(cell, "greedy").exact_rate == 1.0
        assert "(uncertified)" in format_summary(report)

    def test_failures_are_recorded(self) -> None:
        """Test a raising method is logged per instance, not fatal."""
        with patch(
            "src.harness.runner.solve_qkp", side_effect=RuntimeError("boom")
        ):
            report = run_plan(_greedy_plan(instances_per_cell=3))
        cell = report.cells[0]
        assert report.failed
        assert all(record.error == "boom" for record in cell.records)
        summary = summarize_cell(cell, "greedy")
        assert (summary.failures, summary.instances) == (3, 0)
        assert summary.mean_error is None

    def test_generation_failure_stays_in_its_cell(self) -> None:
        """Test a failing generator marks one cell and the batch continues."""

        def flaky(n: int, delta: float, seed: int) -> QkpInstance:
            if n == 8:
                raise RuntimeError("bad seed")
            return generate(n, delta, seed)

        with patch("src.harness.runner.generate", side_effect=flaky):
            report = run_plan(_greedy_plan(sizes=(6, 8), instances_per_cell=2))
        healthy, broken = report.cells
        assert not healthy.failed
        assert healthy.certified
        assert len(broken.records) == 2
        assert all(record.error == "bad seed" for record in broken.records)
        assert not broken.certified
        assert broken.references == (None, None)
        assert any("generation failed" in w for w in broken.warnings)

    def test_oracle_failure_leaves_cell_uncertified(self) -> None:
        """Test a raising oracle falls back to the best profit found."""
        with patch(
            "src.harness.runner.exact_solve", side_effect=RuntimeError("oracle")
        ):
            report = run_plan(_greedy_plan(instances_per_cell=2))
        cell = report.cells[0]
        assert not cell.failed
        assert not cell.certified
        assert cell.references == tuple(r.profit for r in cell.records)
        assert any("oracle failed" in w for w in cell.warnings)

    def test_resumes_from_cell_cache(self, tmp_path: Path) -> None:
        """Test a rerun reloads cached cells instead of recomputing."""
        plan = _greedy_plan(instances_per_cell=3)
        first = run_plan(plan, tmp_path)
        cache = tmp_path / CELL_DIR / f"{plan.cell_key(8, 0)}.json"
        assert cache.exists()
        with patch(
            "src.harness.runner.run_cell", side_effect=AssertionError("rerun")
        ):
            second = run_plan(plan, tmp_path)
        assert second == first

    def test_cells_sorted_by_size_and_density(self) -> None:
        """Test cells come out in (N, delta) order."""
        report = run_plan(
            _greedy_plan(sizes=(6, 4), densities=(1.0, 0.2), instances_per_cell=1)
        )
        assert [(c.n, c.delta) for c in report.cells] == [
            (4, 1.0),
            (4, 0.2),
            (6, 1.0),
            (6, 0.2),
        ]


class TestCurves:
    """Test best-so-far error curves."""

    def test_hand_computed_curve(self) -> None:
        """Test averaging with carry-forward of shorter histories."""
        records = (
            InstanceRecord(0, "om_mcmc", 10, 3, "t_max", (None, 10, 10)),
            InstanceRecord(1, "om_mcmc", 15, 1, "epsilon", (15,)),
        )
        report = ExperimentReport(
            plan=ExperimentPlan(sizes=(4,), densities=(0.2,), methods=("om_mcmc",)),
            cells=(_cell((20, 20), records),),
        )
        curve = curves_from_report(report)[(4, 0.2, "om_mcmc")]
        assert curve == pytest.approx((1.0, 0.625, 0.375, 0.375))

    def test_curves_start_at_one_and_never_rise(self) -> None:
        """Test t=0 is 1 and later points are non-increasing."""
        curves = iteration_curves(_iterative_plan())
        assert set(curves) == {(6, 0.6, "om_exact"), (6, 0.6, "naive")}
        for curve in curves.values():
            assert curve[0] == 1.0
            assert all(b <= a + 1e-12 for a, b in zip(curve, curve[1:]))

    def test_write_curves_csv(self, tmp_path: Path) -> None:
        """Test one row per curve point."""
        curves = {(4, 0.2, "naive"): (1.0, 0.5)}
        path = write_curves_csv(tmp_path / "curves.csv", curves)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines == [
            "n,delta,method,t,mean_error",
            "4,0.2,naive,0,1",
            "4,0.2,naive,1,0.5",
        ]


class TestSummaries:
    """Test per-cell aggregation."""

    def test_summary_statistics(self) -> None:
        """Test exclusions, the missing-solution error and the standard error."""
        records = (
            InstanceRecord(0, "greedy", 10),
            InstanceRecord(1, "greedy", 15),
            InstanceRecord(2, "greedy", 0),
            InstanceRecord(3, "greedy", 5),
            InstanceRecord(4, "greedy", None, error="boom"),
            InstanceRecord(5, "greedy", None),
        )
        cell = _cell((10, 20, 0, None, 40, 8), records)
        summary = summarize_cell(cell, "greedy")
        assert summary.instances == 3
        assert summary.failures == 1
        assert summary.mean_error == pytest.approx((0.0 + 0.25 + 1.0) / 3)
        assert summary.exact_rate == pytest.approx(1 / 3)


class TestEmitReport:
    """Test CSV, JSON and text outputs."""

    def test_empty_report_has_header_only(self, tmp_path: Path) -> None:
        """Test a report without cells writes just the header."""
        emit_report(ExperimentReport(plan=_greedy_plan()), tmp_path)
        text = (tmp_path / "report.csv").read_text(encoding="utf-8")
        assert text == ",".join(REPORT_COLUMNS) + "\n"

    def test_row_count(self) -> None:
        """Test rows = cells x methods + curve points."""
        report = run_plan(_iterative_plan())
        points = sum(len(c) for c in curves_from_report(report).values())
        assert len(report_rows(report)) == len(summarize(report)) + points
        assert len(summarize(report)) == 3

    def test_same_plan_same_bytes(self, tmp_path: Path) -> None:
        """Test two independent runs write identical CSV files."""
        plan = _iterative_plan()
        emit_report(run_plan(plan), tmp_path / "a")
        emit_report(run_plan(plan), tmp_path / "b")
        first = (tmp_path / "a" / "report.csv").read_bytes()
        assert first == (tmp_path / "b" / "report.csv").read_bytes()

    def test_json_round_trip(self, tmp_path: Path) -> None:
        """Test report.json reloads to an equal report."""
        report = run_plan(_iterative_plan())
        written = emit_report(report, tmp_path)
        assert {p.name for p in written} == {
            "report.csv",
            "report.json",
            "summary.txt",
        }
        assert load_report(tmp_path / "report.json") == report

    def test_schema_mismatch(self, tmp_path: Path) -> None:
        """Test a report of another schema version is rejected."""
        payload = ExperimentReport(plan=_greedy_plan()).to_dict()
        payload["schema_version"] = 0
        path = tmp_path / "report.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(ReportIOError):
            load_report(path)

    def test_term_counts_written(self, tmp_path: Path) -> None:
        """Test terms.csv accompanies a report carrying term counts."""
        rows = term_count_table((8,), (1.0,), (0, 1), capacity=50)
        assert [(r.om_terms, r.slack_terms) for r in rows] == [(28, 91)] * 2
        emit_report(
            ExperimentReport(plan=_greedy_plan(), term_counts=rows), tmp_path
        )
        lines = (tmp_path / "terms.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "n,delta,seed,om_terms,slack_terms"
        assert lines[1] == "8,1,0,28,91"
