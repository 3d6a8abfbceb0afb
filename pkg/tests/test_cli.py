"""Tests for the command-line interface.

Dependencies:
    - pytest: Testing framework
    - json: Reading written result files
    - unittest.mock: Forcing method failures
    - typer.testing: CLI testing utilities
    - src.cli: CLI application
"""

import json
from pathlib import Path
from unittest.mock import patch

import pytest
from typer.testing import CliRunner

from src.cli import app
from src.core.serialization import write_json
from src.qkp.instance import QkpInstance, generate

runner = CliRunner()


@pytest.fixture
def instance_file(tmp_path: Path, two_item_instance: QkpInstance) -> Path:
    """Two-item instance written in the instance-file layout."""
    return write_json(tmp_path / "two.json", two_item_instance.to_dict())


@pytest.fixture
def greedy_plan_file(tmp_path: Path) -> Path:
    """Small greedy-only plan file."""
    plan = {
        "sizes": [6],
        "densities": [0.6],
        "instances_per_cell": 3,
        "methods": ["greedy"],
    }
    return write_json(tmp_path / "plan.json", plan)


class TestSolveCommand:
    """Test the ``solve`` command."""

    def test_exact_sampler_on_two_items(self, instance_file: Path) -> None:
        """Test the Boltzmann-sampled loop reports profit 20."""
        result = runner.invoke(
            app, ["solve", "--instance", str(instance_file), "--method", "exact"]
        )
        assert result.exit_code == 0, result.output
        assert "Best profit: 20" in result.output
        assert "Configuration: 01" in result.output
        assert "Iterations:" in result.output

    def test_naive_on_two_items(self, instance_file: Path) -> None:
        """Test the exact-minimizer loop ends on the empty selection."""
        result = runner.invoke(
            app, ["solve", "--instance", str(instance_file), "--method", "naive"]
        )
        assert result.exit_code == 0, result.output
        assert "Best profit: 0" in result.output

    def test_generated_instance_with_flags(self) -> None:
        """Test sampler and solver flags on a generated instance."""
        result = runner.invoke(
            app,
            [
                "solve",
                "--n",
                "6",
                "--delta",
                "0.6",
                "--method",
                "mcmc",
                "--samples",
                "50",
                "--sweeps",
                "10",
                "--tmax",
                "3",
                "--seed",
                "4",
            ],
        )
        assert result.exit_code == 0, result.output
        assert "Method: om_mcmc" in result.output
        assert "Multipliers:" in result.output

    def test_requires_exactly_one_instance_source(
        self, instance_file: Path
    ) -> None:
        """Test --instance and --n are mutually exclusive and required."""
        assert runner.invoke(app, ["solve"]).exit_code == 1
        both = runner.invoke(
            app, ["solve", "--instance", str(instance_file), "--n", "4"]
        )
        assert both.exit_code == 1
        assert "exactly one" in both.output

    def test_invalid_parameter(self, instance_file: Path) -> None:
        """Test a package error exits 1 with its message."""
        result = runner.invoke(
            app, ["solve", "--instance", str(instance_file), "--beta", "-1"]
        )
        assert result.exit_code == 1
        assert "Error: beta must be positive" in result.output

    def test_result_file(self, instance_file: Path, tmp_path: Path) -> None:
        """Test --out writes the history, method and instance."""
        out = tmp_path / "result.json"
        result = runner.invoke(
            app,
            [
                "solve",
                "--instance",
                str(instance_file),
                "--method",
                "exact",
                "--tmax",
                "5",
                "--out",
                str(out),
            ],
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["method"] == "om_exact"
        assert payload["instance"]["capacity"] == 4
        assert len(payload["history"]) == payload["iterations"]

    def test_kkt_lines(self, instance_file: Path) -> None:
        """Test --kkt prints one line per constraint."""
        result = runner.invoke(
            app,
            [
                "solve",
                "--instance",
                str(instance_file),
                "--method",
                "exact",
                "--tmax",
                "3",
                "--kkt",
            ],
        )
        assert result.exit_code == 0, result.output
        assert "KKT[0]: mu=" in result.output

    def test_kkt_uses_last_sampled_multiplier(
        self, instance_file: Path, tmp_path: Path
    ) -> None:
        """Test --kkt reports the mu the last samples were drawn under."""
        out = tmp_path / "run.json"
        result = runner.invoke(
            app,
            [
                "solve",
                "--instance",
                str(instance_file),
                "--method",
                "exact",
                "--tmax",
                "3",
                "--kkt",
                "--out",
                str(out),
            ],
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(out.read_text(encoding="utf-8"))
        sampled_mu = payload["history"][-1]["mu"][0]
        assert f"KKT[0]: mu={sampled_mu:.6g} " in result.output

    def test_config_file(self, instance_file: Path, tmp_path: Path) -> None:
        """Test solver settings from a TOML file."""
        config = tmp_path / "settings.toml"
        config.write_text(
            "[sampler]\nnum_samples = 200\n\n[solver]\nt_max = 2\n",
            encoding="utf-8",
        )
        result = runner.invoke(
            app,
            [
                "solve",
                "--instance",
                str(instance_file),
                "--method",
                "exact",
                "--config",
                str(config),
            ],
        )
        assert result.exit_code == 0, result.output
        assert "Iterations: 2" in result.output

    def test_flags_override_config_file(
        self, instance_file: Path, tmp_path: Path
    ) -> None:
        """Test an explicit flag beats the file value."""
        config = tmp_path / "settings.json"
        config.write_text(json.dumps({"solver": {"t_max": 2}}), encoding="utf-8")
        result = runner.invoke(
            app,
            [
                "solve",
                "--instance",
                str(instance_file),
                "--method",
                "exact",
                "--config",
                str(config),
                "--tmax",
                "1",
            ],
        )
        assert result.exit_code == 0, result.output
        assert "Iterations: 1" in result.output

    def test_unknown_config_key(self, instance_file: Path, tmp_path: Path) -> None:
        """Test unknown settings exit 1."""
        config = tmp_path / "settings.toml"
        config.write_text("[solver]\nmomentum = 0.9\n", encoding="utf-8")
        result = runner.invoke(
            app, ["solve", "--instance", str(instance_file), "--config", str(config)]
        )
        assert result.exit_code == 1
        assert "Error:" in result.output


class TestQkpCommands:
    """Test ``qkp gen`` and ``qkp show``."""

    def test_gen_writes_one_file_per_seed(self, tmp_path: Path) -> None:
        """Test file names carry n, delta and seed."""
        result = runner.invoke(
            app,
            [
                "qkp",
                "gen",
                "--n",
                "5",
                "--delta",
                "0.6",
                "--seed",
                "3",
                "--count",
                "2",
                "--out-dir",
                str(tmp_path),
            ],
        )
        assert result.exit_code == 0, result.output
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == ["qkp_n5_d0.6_s3.json", "qkp_n5_d0.6_s4.json"]
        payload = json.loads((tmp_path / names[0]).read_text(encoding="utf-8"))
        expected = generate(5, 0.6, seed=3)
        assert payload["capacity"] == expected.capacity

    def test_gen_rejects_bad_density(self, tmp_path: Path) -> None:
        """Test ConfigError surfaces as exit code 1."""
        result = runner.invoke(
            app, ["qkp", "gen", "--n", "5", "--delta", "2", "--out-dir", str(tmp_path)]
        )
        assert result.exit_code == 1

    def test_show(self, instance_file: Path) -> None:
        """Test greedy and exact profits of the two-item instance."""
        result = runner.invoke(app, ["qkp", "show", str(instance_file)])
        assert result.exit_code == 0, result.output
        assert "Greedy: profit=20 config=01" in result.output
        assert "Exact: profit=20 config=01" in result.output

    def test_show_beyond_oracle(self, tmp_path: Path) -> None:
        """Test the oracle reports unavailability for large n."""
        path = write_json(tmp_path / "big.json", generate(33, 0.2, 1).to_dict())
        result = runner.invoke(app, ["qkp", "show", str(path)])
        assert result.exit_code == 0, result.output
        assert "oracle unavailable" in result.output

    def test_show_missing_file(self, tmp_path: Path) -> None:
        """Test I/O errors name the file and exit 1."""
        result = runner.invoke(app, ["qkp", "show", str(tmp_path / "none.json")])
        assert result.exit_code == 1
        assert "none.json" in result.output


class TestBenchCommands:
    """Test ``bench run``, ``bench curves`` and ``bench compare-terms``."""

    def test_run(self, greedy_plan_file: Path, tmp_path: Path) -> None:
        """Test reports are written and the summary is printed."""
        out = tmp_path / "bench"
        result = runner.invoke(
            app, ["bench", "run", "--plan", str(greedy_plan_file), "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        assert (out / "report.csv").exists()
        assert (out / "report.json").exists()
        assert (out / "summary.txt").exists()
        assert "greedy" in result.output

    def test_run_with_failures_exits_nonzero(
        self, greedy_plan_file: Path, tmp_path: Path
    ) -> None:
        """Test exit code 1 when a cell recorded failures."""
        with patch(
            "src.harness.runner.solve_qkp", side_effect=RuntimeError("boom")
        ):
            result = runner.invoke(
                app,
                [
                    "bench",
                    "run",
                    "--plan",
                    str(greedy_plan_file),
                    "--out",
                    str(tmp_path / "bench"),
                ],
            )
        assert result.exit_code == 1
        assert (tmp_path / "bench" / "report.csv").exists()

    def test_run_missing_plan(self, tmp_path: Path) -> None:
        """Test a missing plan file exits 1."""
        result = runner.invoke(
            app, ["bench", "run", "--plan", str(tmp_path / "missing.json")]
        )
        assert result.exit_code == 1
        assert "Error:" in result.output

    def test_curves(self, tmp_path: Path) -> None:
        """Test curves.csv lists points for iterative methods."""
        plan = write_json(
            tmp_path / "plan.json",
            {
                "sizes": [5],
                "densities": [1.0],
                "instances_per_cell": 2,
                "methods": ["naive", "greedy"],
                "solver_settings": {"naive": {"t_max": 3}},
            },
        )
        out = tmp_path / "bench"
        result = runner.invoke(
            app, ["bench", "curves", "--plan", str(plan), "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        lines = (out / "curves.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "n,delta,method,t,mean_error"
        assert lines[1] == "5,1,naive,0,1"
        assert all(",greedy," not in line for line in lines)

    def test_compare_terms(self, tmp_path: Path) -> None:
        """Test 28 relaxed against 91 slack terms at N=8, c=50."""
        csv_path = tmp_path / "terms.csv"
        result = runner.invoke(
            app,
            [
                "bench",
                "compare-terms",
                "--n",
                "8",
                "--delta",
                "1.0",
                "--seeds",
                "3",
                "--capacity",
                "50",
                "--csv",
                str(csv_path),
            ],
        )
        assert result.exit_code == 0, result.output
        assert "om_terms=    28.00" in result.output
        assert "slack_terms=    91.00" in result.output
        assert len(csv_path.read_text(encoding="utf-8").splitlines()) == 4

    def test_compare_terms_needs_a_seed(self) -> None:
        """Test --seeds 0 is rejected."""
        result = runner.invoke(
            app, ["bench", "compare-terms", "--n", "8", "--seeds", "0"]
        )
        assert result.exit_code == 1
