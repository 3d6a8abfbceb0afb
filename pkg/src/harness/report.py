"""Aggregation and emission of experiment reports.

Per ``(N, Δ, method)`` the summary holds the mean relative error, its
standard error (sample stddev / sqrt(count)), the exact rate and the mean
iteration count. A method that found no feasible solution scores an error
of 1; failed runs and instances without a reference are left out of the
statistics and counted separately.

``report.csv`` carries one row per cell-method and one per curve point and
contains no timing data, so reruns of the same plan produce identical
bytes. Wall time and RSS go to ``report.json`` only.

Dependencies:
    - csv: Tabular output
    - pathlib: Output layout
    - src.core.serialization: JSON report
    - src.qkp.metrics: Relative error and standard error
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from src.config import REPORT_SCHEMA_VERSION
from src.core.exceptions import ReportIOError
from src.core.serialization import read_json, write_json
from src.harness.results import CellResult, ExperimentReport, TermCountRow
from src.qkp.metrics import mean_and_standard_error, relative_error

logger = logging.getLogger(__name__)

CurveKey = Tuple[int, float, str]

REPORT_COLUMNS = (
    "schema_version",
    "kind",
    "n",
    "delta",
    "method",
    "certified",
    "t",
    "instances",
    "failures",
    "mean_error",
    "standard_error",
    "exact_rate",
    "mean_iterations",
)
TERM_COLUMNS = ("n", "delta", "seed", "om_terms", "slack_terms")
CURVE_COLUMNS = ("n", "delta", "method", "t", "mean_error")

SINGLE_SHOT_METHODS = ("greedy",)


@dataclass(frozen=True)
class SummaryRow:
    """Statistics of one method in one cell."""

    n: int
    delta: float
    method: str
    certified: bool
    instances: int
    failures: int
    mean_error: Optional[float]
    standard_error: Optional[float]
    exact_rate: Optional[float]
    mean_iterations: Optional[float]


def _error(profit: Optional[float], reference: int) -> float:
    value = None if profit is None else -float(profit)
    return relative_error(value, -float(reference))


def _usable(reference: Optional[int]) -> bool:
    return reference is not None and reference != 0


def summarize_cell(cell: CellResult, method: str) -> SummaryRow:
    """Aggregate one method's records in a cell.

    :param cell: Cell result
    :type cell: CellResult
    :param method: Method name
    :type method: str
    :return: Summary statistics
    :rtype: SummaryRow
    """
    errors: List[float] = []
    iterations: List[float] = []
    failures = 0
    for record in cell.records_for(method):
        if record.error is not None:
            failures += 1
            continue
        reference = cell.references[record.index]
        if not _usable(reference):
            continue
        assert reference is not None
        errors.append(_error(record.profit, reference))
        iterations.append(float(record.iterations))

    if not errors:
        return SummaryRow(
            n=cell.n,
            delta=cell.delta,
            method=method,
            certified=cell.certified,
            instances=0,
            failures=failures,
            mean_error=None,
            standard_error=None,
            exact_rate=None,
            mean_iterations=None,
        )
    mean, stderr = mean_and_standard_error(errors)
    exact = sum(1 for e in errors if e == 0.0) / len(errors)
    return SummaryRow(
        n=cell.n,
        delta=cell.delta,
        method=method,
        certified=cell.certified,
        instances=len(errors),
        failures=failures,
        mean_error=mean,
        standard_error=stderr,
        exact_rate=exact,
        mean_iterations=mean_and_standard_error(iterations)[0],
    )


def summarize(report: ExperimentReport) -> List[SummaryRow]:
    """Summary rows in (N, Δ, plan method order) order.

    :param report: Experiment report
    :type report: ExperimentReport
    :return: One row per cell and method
    :rtype: List[SummaryRow]
    """
    return [
        summarize_cell(cell, method)
        for cell in report.cells
        for method in report.plan.methods
    ]


def _instance_curve(
    best_profits: Tuple[Optional[int], ...], reference: int, length: int
) -> List[float]:
    curve = [1.0]
    current: Optional[int] = None
    for t in range(length):
        if t < len(best_profits) and best_profits[t] is not None:
            current = best_profits[t]
        curve.append(_error(current, reference))
    return curve


def curves_from_report(
    report: ExperimentReport,
) -> Dict[CurveKey, Tuple[float, ...]]:
    """Mean best-so-far relative error per iteration.

    Entry ``t`` averages, over the instances of a cell, the error of the
    best feasible solution found within the first ``t`` iterations; ``t = 0``
    is always 1. Runs that stopped early keep their final value.

    :param report: Experiment report
    :type report: ExperimentReport
    :return: ``(n, delta, method) -> errors for t = 0, 1, ...``
    :rtype: Dict[CurveKey, Tuple[float, ...]]
    """
    curves: Dict[CurveKey, Tuple[float, ...]] = {}
    for cell in report.cells:
        for method in report.plan.methods:
            if method in SINGLE_SHOT_METHODS:
                continue
            records = [
                r
                for r in cell.records_for(method)
                if r.error is None and _usable(cell.references[r.index])
            ]
            if not records:
                continue
            length = max(len(r.best_profits) for r in records)
            series = []
            for record in records:
                reference = cell.references[record.index]
                assert reference is not None
                series.append(
                    _instance_curve(record.best_profits, reference, length)
                )
            curves[(cell.n, cell.delta, method)] = tuple(
                sum(point) / len(series) for point in zip(*series)
            )
    return curves


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def report_rows(report: ExperimentReport) -> List[Dict[str, Any]]:
    """CSV rows: cell-method summaries followed by curve points.

    :param report: Experiment report
    :type report: ExperimentReport
    :return: Rows keyed by :data:`REPORT_COLUMNS`
    :rtype: List[Dict[str, Any]]
    """
    rows: List[Dict[str, Any]] = []
    for summary in summarize(report):
        rows.append(
            {
                "kind": "cell",
                "n": summary.n,
                "delta": summary.delta,
                "method": summary.method,
                "certified": summary.certified,
                "instances": summary.instances,
                "failures": summary.failures,
                "mean_error": summary.mean_error,
                "standard_error": summary.standard_error,
                "exact_rate": summary.exact_rate,
                "mean_iterations": summary.mean_iterations,
            }
        )
    certified = {(c.n, c.delta): c.certified for c in report.cells}
    for (n, delta, method), curve in curves_from_report(report).items():
        for t, error in enumerate(curve):
            rows.append(
                {
                    "kind": "curve",
                    "n": n,
                    "delta": delta,
                    "method": method,
                    "certified": certified[(n, delta)],
                    "t": t,
                    "mean_error": error,
                }
            )
    for row in rows:
        row["schema_version"] = REPORT_SCHEMA_VERSION
    return rows


def _write_csv(
    path: Path, columns: Tuple[str, ...], rows: Iterable[Mapping[str, Any]]
) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(
                handle, fieldnames=list(columns), lineterminator="\n"
            )
            writer.writeheader()
            for row in rows:
                writer.writerow({c: _fmt(row.get(c)) for c in columns})
    except OSError as e:
        raise ReportIOError(f"Cannot write {path}: {e}") from e
    return path


def write_terms_csv(
    path: Union[str, Path], rows: Iterable[TermCountRow]
) -> Path:
    """Write a term-count table.

    :param path: Destination file
    :type path: Union[str, Path]
    :param rows: Term-count rows
    :type rows: Iterable[TermCountRow]
    :return: The written path
    :rtype: Path
    :raises ReportIOError: If the file cannot be written
    """
    return _write_csv(Path(path), TERM_COLUMNS, (r.to_dict() for r in rows))


def format_summary(report: ExperimentReport) -> str:
    """Human-readable table of the cell summaries.

    :param report: Experiment report
    :type report: ExperimentReport
    :return: Multi-line text
    :rtype: str
    """
    lines = [
        f"{'N':>4} {'delta':>6} {'method':<8} {'inst':>5} {'fail':>5} "
        f"{'rel.err':>10} {'stderr':>10} {'exact':>6} {'iters':>7}"
    ]
    for s in summarize(report):
        flag = "" if s.certified else "  (uncertified)"
        if s.mean_error is None:
            lines.append(
                f"{s.n:>4} {s.delta:>6.2f} {s.method:<8} {s.instances:>5} "
                f"{s.failures:>5} {'-':>10} {'-':>10} {'-':>6} {'-':>7}{flag}"
            )
            continue
        lines.append(
            f"{s.n:>4} {s.delta:>6.2f} {s.method:<8} {s.instances:>5} "
            f"{s.failures:>5} {s.mean_error:>10.4f} "
            f"{s.standard_error or 0.0:>10.4f} {s.exact_rate or 0.0:>6.2f} "
            f"{s.mean_iterations or 0.0:>7.1f}{flag}"
        )
    return "\n".join(lines)


def emit_report(
    report: ExperimentReport, out_dir: Union[str, Path]
) -> List[Path]:
    """Write ``report.csv``, ``report.json`` and ``summary.txt``.

    ``terms.csv`` is added when the report carries term counts.

    :param report: Experiment report
    :type report: ExperimentReport
    :param out_dir: Output directory
    :type out_dir: Union[str, Path]
    :return: Written paths
    :rtype: List[Path]
    :raises ReportIOError: On I/O failures, naming the file
    """
    directory = Path(out_dir)
    written = [
        _write_csv(
            directory / "report.csv", REPORT_COLUMNS, report_rows(report)
        ),
        write_json(directory / "report.json", report.to_dict()),
    ]
    summary = directory / "summary.txt"
    try:
        summary.write_text(format_summary(report) + "\n", encoding="utf-8")
    except OSError as e:
        raise ReportIOError(f"Cannot write {summary}: {e}") from e
    written.append(summary)
    if report.term_counts:
        terms = write_terms_csv(directory / "terms.csv", report.term_counts)
        written.append(terms)
    logger.info("report written to %s", directory)
    return written


def load_report(path: Union[str, Path]) -> ExperimentReport:
    """Read a ``report.json`` written by :func:`emit_report`.

    :param path: Report file
    :type path: Union[str, Path]
    :return: Report
    :rtype: ExperimentReport
    :raises ReportIOError: If the file cannot be read or has another schema
    """
    return ExperimentReport.from_dict(read_json(path))


def write_curves_csv(
    path: Union[str, Path], curves: Mapping[CurveKey, Tuple[float, ...]]
) -> Path:
    """Write iteration curves as ``n, delta, method, t, mean_error`` rows.

    :param path: Destination file
    :type path: Union[str, Path]
    :param curves: Output of :func:`curves_from_report`
    :type curves: Mapping[CurveKey, Tuple[float, ...]]
    :return: The written path
    :rtype: Path
    :raises ReportIOError: If the file cannot be written
    """
    rows = (
        {"n": n, "delta": delta, "method": method, "t": t, "mean_error": e}
        for (n, delta, method), curve in curves.items()
        for t, e in enumerate(curve)
    )
    return _write_csv(Path(path), CURVE_COLUMNS, rows)
