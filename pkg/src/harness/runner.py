"""Resumable execution of experiment plans.

A cell is one ``(N, Δ)`` grid point: its instances are generated once and
every method of the plan runs on each of them. Completed cells are stored
under ``<out_dir>/cells/<cell_key>.json`` and reloaded on rerun, so an
interrupted batch resumes where it stopped. A method that raises on an
instance is recorded as failed for that instance; the batch continues.
A failure to generate an instance marks every method failed on it, and a
failing oracle leaves the cell uncertified.

Dependencies:
    - logging: Progress and failure reporting
    - pathlib: Cache layout
    - src.core.resource_manager: Per-cell wall time and RSS
    - src.core.serialization: Cell cache files
    - src.qkp: Generation, exact oracle, method dispatch, term counts
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.core.resource_manager import measure_resources
from src.core.serialization import read_json, write_json
from src.harness.plan import ExperimentPlan
from src.harness.report import CurveKey, curves_from_report
from src.harness.results import (
    CellResult,
    ExperimentReport,
    InstanceRecord,
    TermCountRow,
)
from src.qkp.exact import exact_solve
from src.qkp.instance import QkpInstance, generate
from src.qkp.methods import solve_qkp
from src.slack.encoding import count_comparison

logger = logging.getLogger(__name__)

CELL_DIR = "cells"


def _run_method(
    plan: ExperimentPlan,
    instance: QkpInstance,
    index: int,
    method: str,
) -> InstanceRecord:
    sampler_config = plan.sampler_config(
        method, plan.method_seed(instance.seed, method)
    )
    try:
        outcome = solve_qkp(
            instance, method, sampler_config, plan.solver_config(method)
        )
    except Exception as e:  # pylint: disable=broad-except
        logger.error("%s failed on instance %d: %s", method, index, e)
        return InstanceRecord(
            index=index, method=method, profit=None, error=str(e)
        )

    best_profits: Tuple[Optional[int], ...] = ()
    stop_reason = None
    if outcome.result is not None:
        stop_reason = outcome.result.stop_reason
        best_profits = tuple(
            None
            if row.best_feasible_value is None
            else int(round(-row.best_feasible_value))
            for row in outcome.result.history
        )
    return InstanceRecord(
        index=index,
        method=method,
        profit=outcome.profit,
        iterations=outcome.iterations,
        stop_reason=stop_reason,
        best_profits=best_profits,
    )


def _best_found(records: Sequence[InstanceRecord], index: int) -> Optional[int]:
    found = [
        r.profit for r in records if r.index == index and r.profit is not None
    ]
    return max(found) if found else None


def _certified_optimum(
    instance: QkpInstance, oracle: str, index: int, warnings: List[str]
) -> Optional[int]:
    try:
        optimum = exact_solve(instance, oracle)
    except Exception as e:  # pylint: disable=broad-except
        logger.error("oracle failed on instance %d: %s", index, e)
        warnings.append(f"instance {index}: oracle failed: {e}")
        return None
    return None if optimum is None else optimum.profit


def run_cell(plan: ExperimentPlan, n: int, delta_index: int) -> CellResult:
    """Generate a cell's instances and run every method on them.

    Without a certified optimum for every instance the cell is flagged
    uncertified and each instance's reference becomes the best profit any
    method found on it.

    :param plan: Experiment plan
    :type plan: ExperimentPlan
    :param n: Item count
    :type n: int
    :param delta_index: Position of the density in ``plan.densities``
    :type delta_index: int
    :return: Cell result
    :rtype: CellResult
    """
    delta = plan.densities[delta_index]
    records: List[InstanceRecord] = []
    optima: List[Optional[int]] = []
    warnings: List[str] = []

    with measure_resources() as usage:
        for index in range(plan.instances_per_cell):
            seed = plan.instance_seed(n, delta_index, index)
            try:
                instance = generate(n, delta, seed)
            except Exception as e:  # pylint: disable=broad-except
                logger.error("instance %d of n=%d failed: %s", index, n, e)
                warnings.append(f"instance {index}: generation failed: {e}")
                optima.append(None)
                records.extend(
                    InstanceRecord(
                        index=index, method=method, profit=None, error=str(e)
                    )
                    for method in plan.methods
                )
                continue
            warnings.extend(f"instance {index}: {w}" for w in instance.warnings)
            optima.append(_certified_optimum(instance, plan.oracle, index, warnings))
            for method in plan.methods:
                records.append(_run_method(plan, instance, index, method))

    certified = all(value is not None for value in optima)
    references = (
        tuple(optima)
        if certified
        else tuple(
            _best_found(records, i) for i in range(plan.instances_per_cell)
        )
    )
    logger.info(
        "cell n=%d delta=%g done in %.2fs (%s)",
        n,
        delta,
        usage.wall_time,
        "certified" if certified else "uncertified",
    )
    return CellResult(
        n=n,
        delta=delta,
        certified=certified,
        references=references,
        records=tuple(records),
        wall_time=usage.wall_time,
        ram_usage_mb=usage.ram_usage_mb,
        warnings=tuple(warnings),
    )


def run_plan(
    plan: ExperimentPlan, out_dir: Optional[Union[str, Path]] = None
) -> ExperimentReport:
    """Run (or resume) every cell of a plan.

    :param plan: Experiment plan
    :type plan: ExperimentPlan
    :param out_dir: Directory of the cell cache, None to disable caching
    :type out_dir: Optional[Union[str, Path]]
    :return: Report with cells sorted by (N, Δ)
    :rtype: ExperimentReport
    """
    cells: Dict[Tuple[int, int], CellResult] = {}
    for n, delta_index in plan.cells():
        cache: Optional[Path] = None
        if out_dir is not None:
            key = plan.cell_key(n, delta_index)
            cache = Path(out_dir) / CELL_DIR / f"{key}.json"
        if cache is not None and cache.exists():
            logger.info("cell n=%d loaded from %s", n, cache)
            cells[(n, delta_index)] = CellResult.from_dict(read_json(cache))
            continue
        result = run_cell(plan, n, delta_index)
        if cache is not None:
            write_json(cache, result.to_dict())
        cells[(n, delta_index)] = result

    return ExperimentReport(
        plan=plan, cells=tuple(cells[key] for key in sorted(cells))
    )


def iteration_curves(
    plan: ExperimentPlan, out_dir: Optional[Union[str, Path]] = None
) -> Dict[CurveKey, Tuple[float, ...]]:
    """Mean best-so-far relative error per iteration, per method and cell.

    Runs (or resumes) the plan first; greedy is skipped since it does not
    iterate.

    :param plan: Experiment plan
    :type plan: ExperimentPlan
    :param out_dir: Cell cache directory
    :type out_dir: Optional[Union[str, Path]]
    :return: ``(n, delta, method) -> errors for t = 0, 1, ...``
    :rtype: Dict[CurveKey, Tuple[float, ...]]
    """
    return curves_from_report(run_plan(plan, out_dir))


def term_count_table(
    sizes: Sequence[int],
    densities: Sequence[float],
    seeds: Sequence[int],
    capacity: Optional[int] = None,
) -> Tuple[TermCountRow, ...]:
    """Quadratic-term counts over a grid of generated instances.

    :param sizes: Item counts
    :type sizes: Sequence[int]
    :param densities: Densities
    :type densities: Sequence[float]
    :param seeds: Generator seeds
    :type seeds: Sequence[int]
    :param capacity: Capacity overriding the generated one
    :type capacity: Optional[int]
    :return: One row per (n, delta, seed)
    :rtype: Tuple[TermCountRow, ...]
    """
    rows = []
    for n in sizes:
        for delta in densities:
            for seed in seeds:
                instance = generate(n, delta, seed)
                if capacity is not None:
                    instance = QkpInstance(
                        profits=instance.profits,
                        weights=instance.weights,
                        capacity=capacity,
                        density=delta,
                        seed=seed,
                    )
                counts = count_comparison(instance)
                rows.append(
                    TermCountRow(
                        n=n,
                        delta=delta,
                        seed=seed,
                        om_terms=counts.om_terms,
                        slack_terms=counts.slack_terms,
                    )
                )
    return tuple(rows)
