"""CLI interface for ohzeki_qkp using Typer.

Commands:
    solve                 Run one method on a QKP instance file or a
                          generated instance
    qkp gen               Generate instance files
    qkp show              Greedy and exact solutions of an instance file
    bench run             Run (or resume) an experiment plan
    bench curves          Per-iteration relative-error curves of a plan
    bench compare-terms   Quadratic-term counts, relaxed vs slack QUBO

Dependencies:
    - logging: Verbosity configuration
    - functools: Function decorators
    - enum: Method choices
    - pathlib: Path operations
    - typer: CLI framework (third-party)
    - src.core: Exceptions, settings, serialization, resource measurement
    - src.qkp / src.harness / src.slack: Commands' implementations
"""

import logging
from dataclasses import asdict
from enum import Enum
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TypeVar, cast

import typer

from src.config import RESULTS_DIR
from src.core.exceptions import OhzekiError
from src.core.resource_manager import measure_resources
from src.core.serialization import read_json, write_json
from src.core.settings import load_settings, merge_overrides
from src.core.validation import validate_at_least
from src.harness.plan import load_plan
from src.harness.report import (
    curves_from_report,
    emit_report,
    format_summary,
    write_curves_csv,
    write_terms_csv,
)
from src.harness.runner import run_plan, term_count_table
from src.ohzeki.kkt import final_kkt_report
from src.ohzeki.state import SolverConfig
from src.qkp.exact import exact_solve
from src.qkp.greedy import greedy
from src.qkp.instance import QkpInstance, generate, to_constrained
from src.qkp.methods import default_sampler_config, solve_qkp
from src.samplers.base import SamplerConfig

F = TypeVar("F", bound=Callable[..., Any])

app = typer.Typer(help="Sampling-based Lagrangian relaxation for QUBO.")
qkp_app = typer.Typer(help="Quadratic knapsack instances.")
bench_app = typer.Typer(help="Batch benchmarks.")
app.add_typer(qkp_app, name="qkp")
app.add_typer(bench_app, name="bench")


def handle_errors(func: F) -> F:
    """Decorator to report package errors uniformly.

    :param func: Command body
    :type func: Callable
    :return: Wrapped command
    :rtype: Callable
    """

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except typer.Exit:
            raise
        except OhzekiError as e:
            typer.echo(f"Error: {e}", err=True)
            raise typer.Exit(code=1)
        except Exception as e:  # pylint: disable=broad-except
            typer.echo(f"Unexpected error: {e}", err=True)
            raise typer.Exit(code=1)

    return cast(F, wrapper)


class Method(str, Enum):
    """Methods selectable by ``solve``."""

    MCMC = "mcmc"
    SQA = "sqa"
    EXACT = "exact"
    NAIVE = "naive"


METHOD_NAMES: Dict[Method, str] = {
    Method.MCMC: "om_mcmc",
    Method.SQA: "om_sqa",
    Method.EXACT: "om_exact",
    Method.NAIVE: "naive",
}


@app.callback()
def configure(
    verbose: int = typer.Option(
        0, "--verbose", "-v", count=True, help="-v for INFO, -vv for DEBUG"
    ),
) -> None:
    """Configure logging for every command."""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def _load_instance(
    instance_path: Optional[Path], n: Optional[int], delta: float, seed: int
) -> QkpInstance:
    """Read an instance file or generate an instance.

    :raises typer.Exit: If neither or both sources are given
    """
    if (instance_path is None) == (n is None):
        typer.echo("Error: give exactly one of --instance or --n.", err=True)
        raise typer.Exit(code=1)
    if instance_path is not None:
        return QkpInstance.from_dict(read_json(instance_path))
    assert n is not None
    return generate(n, delta, seed)


@app.command()
@handle_errors
def solve(  # pylint: disable=too-many-arguments,too-many-locals
    instance_path: Optional[Path] = typer.Option(
        None, "--instance", help="Instance file written by `qkp gen`"
    ),
    n: Optional[int] = typer.Option(None, "--n", help="Generate with N items"),
    delta: float = typer.Option(1.0, "--delta", help="Density for --n"),
    instance_seed: int = typer.Option(0, "--instance-seed"),
    method: Method = typer.Option(Method.MCMC, "--method"),
    config_path: Optional[Path] = typer.Option(
        None, "--config", help="TOML/JSON file with [sampler] and [solver]"
    ),
    beta: Optional[float] = typer.Option(None, "--beta"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    sweeps: Optional[int] = typer.Option(None, "--sweeps"),
    trotter: Optional[int] = typer.Option(None, "--trotter"),
    tau: Optional[float] = typer.Option(None, "--tau"),
    tmax: Optional[int] = typer.Option(None, "--tmax"),
    tau_min: Optional[float] = typer.Option(None, "--tau-min"),
    eps: Optional[float] = typer.Option(None, "--eps"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Sampler seed"),
    fisher_dual: Optional[bool] = typer.Option(
        None, "--fisher-dual/--no-fisher-dual"
    ),
    upper_bound: Optional[float] = typer.Option(
        None, "--upper-bound", help="Defaults to minus the greedy profit"
    ),
    time_limit: Optional[float] = typer.Option(None, "--time-limit"),
    out: Optional[Path] = typer.Option(None, "--out", help="Result JSON"),
    kkt: bool = typer.Option(False, "--kkt", help="Print KKT diagnostics"),
) -> None:
    """Run the multiplier loop on a QKP instance."""
    instance = _load_instance(instance_path, n, delta, instance_seed)
    settings = (
        load_settings(config_path)
        if config_path is not None
        else {"sampler": {}, "solver": {}}
    )
    method_name = METHOD_NAMES[method]

    sampler_values = merge_overrides(
        {**asdict(default_sampler_config(method_name)), **settings["sampler"]},
        {
            "beta": beta,
            "num_samples": samples,
            "sweeps": sweeps,
            "trotter": trotter,
            "seed": seed,
        },
    )
    solver_values = merge_overrides(
        settings["solver"],
        {
            "tau_init": tau,
            "t_max": tmax,
            "tau_min": tau_min,
            "epsilon": eps,
            "fisher_dual": fisher_dual,
            "upper_bound": upper_bound,
            "time_limit": time_limit,
        },
    )

    with measure_resources() as usage:
        outcome = solve_qkp(
            instance,
            method_name,
            SamplerConfig.from_mapping(sampler_values),
            SolverConfig.from_mapping(solver_values),
        )
    result = outcome.result
    assert result is not None

    typer.echo(f"Method: {method_name}  (n={instance.n}, c={instance.capacity})")
    if outcome.config is None:
        typer.echo("No feasible solution found.")
    else:
        typer.echo(f"Best profit: {outcome.profit}")
        typer.echo(f"Configuration: {''.join(map(str, outcome.config))}")
    typer.echo(f"Iterations: {result.iterations}  (stop: {result.stop_reason})")
    typer.echo(f"Multipliers: {', '.join(f'{m:.6g}' for m in result.mu)}")
    typer.echo(
        f"Metadata: {usage.wall_time:.3f} s, {usage.ram_usage_mb:.2f} MB RSS"
    )

    report = final_kkt_report(to_constrained(instance), result) if kkt else None
    if report is not None:
        for entry in report.entries:
            typer.echo(
                f"KKT[{entry.index}]: mu={entry.multiplier:.6g} "
                f"violation={entry.violation:.6g} slack={entry.slack:.6g} "
                f"residual={entry.residual:.6g}"
            )

    if out is not None:
        payload = result.to_dict()
        payload["method"] = method_name
        payload["instance"] = instance.to_dict()
        typer.echo(f"Result written to: {write_json(out, payload)}")


@qkp_app.command("gen")
@handle_errors
def qkp_gen(
    n: int = typer.Option(..., "--n", help="Item count"),
    delta: float = typer.Option(1.0, "--delta", help="Off-diagonal density"),
    seed: int = typer.Option(0, "--seed", help="First seed"),
    count: int = typer.Option(1, "--count", help="Instances (seeds seed..)"),
    out_dir: Path = typer.Option(
        Path(RESULTS_DIR) / "instances", "--out-dir"
    ),
) -> None:
    """Generate instance files ``qkp_n{N}_d{delta}_s{seed}.json``."""
    for offset in range(count):
        instance = generate(n, delta, seed + offset)
        path = out_dir / f"qkp_n{n}_d{delta:g}_s{instance.seed}.json"
        write_json(path, instance.to_dict())
        for warning in instance.warnings:
            typer.echo(f"Warning: {path.name}: {warning}", err=True)
        typer.echo(str(path))


@qkp_app.command("show")
@handle_errors
def qkp_show(
    path: Path = typer.Argument(..., help="Instance file"),
    oracle: str = typer.Option("bnb", "--oracle", help="bnb or enumerate"),
) -> None:
    """Print an instance's greedy and exact solutions."""
    instance = QkpInstance.from_dict(read_json(path))
    typer.echo(
        f"n={instance.n} delta={instance.density:g} seed={instance.seed} "
        f"capacity={instance.capacity} total_weight={int(instance.weights.sum())}"
    )
    heuristic = greedy(instance)
    typer.echo(
        f"Greedy: profit={heuristic.profit} "
        f"config={''.join(map(str, heuristic.config))}"
    )
    optimum = exact_solve(instance, oracle)
    if optimum is None:
        typer.echo("Exact: oracle unavailable for this size")
    else:
        typer.echo(
            f"Exact: profit={optimum.profit} "
            f"config={''.join(map(str, optimum.config))}"
        )


@bench_app.command("run")
@handle_errors
def bench_run(
    plan_path: Path = typer.Option(..., "--plan", help="Plan JSON file"),
    out: Path = typer.Option(Path(RESULTS_DIR) / "bench", "--out"),
) -> None:
    """Run or resume a plan; exit code 1 if any cell failed."""
    report = run_plan(load_plan(plan_path), out)
    for path in emit_report(report, out):
        typer.echo(f"Wrote {path}")
    typer.echo(format_summary(report))
    if report.failed:
        typer.echo("Error: some cells recorded failures.", err=True)
        raise typer.Exit(code=1)


@bench_app.command("curves")
@handle_errors
def bench_curves(
    plan_path: Path = typer.Option(..., "--plan", help="Plan JSON file"),
    out: Path = typer.Option(Path(RESULTS_DIR) / "bench", "--out"),
) -> None:
    """Per-iteration best-so-far relative error, written to curves.csv."""
    report = run_plan(load_plan(plan_path), out)
    curves = curves_from_report(report)
    typer.echo(f"Wrote {write_curves_csv(out / 'curves.csv', curves)}")
    for (size, delta, method), curve in curves.items():
        final = curve[-1] if curve else 1.0
        typer.echo(
            f"n={size} delta={delta:g} {method}: "
            f"{len(curve) - 1} iterations, final error {final:.4f}"
        )


@bench_app.command("compare-terms")
@handle_errors
def bench_compare_terms(
    sizes: List[int] = typer.Option([8, 16, 32, 64], "--n"),
    densities: List[float] = typer.Option([0.2, 0.6, 1.0], "--delta"),
    seeds: int = typer.Option(100, "--seeds", help="Seeds 0..seeds-1"),
    capacity: Optional[int] = typer.Option(
        None, "--capacity", help="Override the generated capacity"
    ),
    csv_path: Optional[Path] = typer.Option(None, "--csv"),
) -> None:
    """Count quadratic terms of the relaxed and slack QUBOs."""
    validate_at_least("seeds", seeds, 1)
    rows = term_count_table(sizes, densities, list(range(seeds)), capacity)
    for size in sizes:
        for delta in densities:
            cell = [r for r in rows if r.n == size and r.delta == delta]
            om = sum(r.om_terms for r in cell) / len(cell)
            slack = sum(r.slack_terms for r in cell) / len(cell)
            typer.echo(
                f"n={size:>3} delta={delta:.2f} om_terms={om:9.2f} "
                f"slack_terms={slack:9.2f}"
            )
    if csv_path is not None:
        typer.echo(f"Wrote {write_terms_csv(csv_path, rows)}")
