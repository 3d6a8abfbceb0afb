"""Result containers of benchmark runs.

Dependencies:
    - dataclasses: Immutable records
    - src.harness.plan: ExperimentPlan
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

from src.config import REPORT_SCHEMA_VERSION
from src.core.exceptions import ReportIOError
from src.harness.plan import ExperimentPlan


@dataclass(frozen=True)
class InstanceRecord:
    """One method on one instance.

    :param index: Instance index within the cell
    :type index: int
    :param method: Method name
    :type method: str
    :param profit: Best feasible profit, None if none found or failed
    :type profit: Optional[int]
    :param iterations: Multiplier updates performed
    :type iterations: int
    :param stop_reason: Solver stop reason, None for greedy or failures
    :type stop_reason: Optional[str]
    :param best_profits: Best feasible profit after each iteration
    :type best_profits: Tuple[Optional[int], ...]
    :param error: Failure message, None on success
    :type error: Optional[str]
    """

    index: int
    method: str
    profit: Optional[int]
    iterations: int = 0
    stop_reason: Optional[str] = None
    best_profits: Tuple[Optional[int], ...] = ()
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to a JSON-ready mapping."""
        return {
            "index": self.index,
            "method": self.method,
            "profit": self.profit,
            "iterations": self.iterations,
            "stop_reason": self.stop_reason,
            "best_profits": list(self.best_profits),
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "InstanceRecord":
        """Inverse of :meth:`to_dict`."""
        return cls(
            index=int(payload["index"]),
            method=str(payload["method"]),
            profit=payload["profit"],
            iterations=int(payload["iterations"]),
            stop_reason=payload["stop_reason"],
            best_profits=tuple(payload["best_profits"]),
            error=payload["error"],
        )


@dataclass(frozen=True)
class CellResult:
    """All methods on all instances of one ``(N, Δ)`` cell.

    ``references`` holds the per-instance optimum profit when the cell is
    certified, otherwise the best profit any method found.
    """

    n: int
    delta: float
    certified: bool
    references: Tuple[Optional[int], ...]
    records: Tuple[InstanceRecord, ...]
    wall_time: float = 0.0
    ram_usage_mb: float = 0.0
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def failed(self) -> bool:
        """True if any method failed on any instance."""
        return any(record.error is not None for record in self.records)

    def records_for(self, method: str) -> List[InstanceRecord]:
        """Records of one method ordered by instance index."""
        return sorted(
            (r for r in self.records if r.method == method),
            key=lambda r: r.index,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to a JSON-ready mapping."""
        return {
            "n": self.n,
            "delta": self.delta,
            "certified": self.certified,
            "references": list(self.references),
            "records": [record.to_dict() for record in self.records],
            "wall_time": self.wall_time,
            "ram_usage_mb": self.ram_usage_mb,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "CellResult":
        """Inverse of :meth:`to_dict`."""
        return cls(
            n=int(payload["n"]),
            delta=float(payload["delta"]),
            certified=bool(payload["certified"]),
            references=tuple(payload["references"]),
            records=tuple(
                InstanceRecord.from_dict(r) for r in payload["records"]
            ),
            wall_time=float(payload.get("wall_time", 0.0)),
            ram_usage_mb=float(payload.get("ram_usage_mb", 0.0)),
            warnings=tuple(payload.get("warnings", ())),
        )


@dataclass(frozen=True)
class TermCountRow:
    """Quadratic-term counts of one generated instance."""

    n: int
    delta: float
    seed: int
    om_terms: int
    slack_terms: int

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to a JSON-ready mapping."""
        return {
            "n": self.n,
            "delta": self.delta,
            "seed": self.seed,
            "om_terms": self.om_terms,
            "slack_terms": self.slack_terms,
        }


@dataclass(frozen=True)
class ExperimentReport:
    """Cells of a run plus an optional term-count table.

    :param plan: Plan that produced the cells
    :type plan: ExperimentPlan
    :param cells: Cell results sorted by (N, Δ)
    :type cells: Tuple[CellResult, ...]
    :param term_counts: Rows of a term-count comparison
    :type term_counts: Tuple[TermCountRow, ...]
    """

    plan: ExperimentPlan
    cells: Tuple[CellResult, ...] = ()
    term_counts: Tuple[TermCountRow, ...] = ()

    @property
    def failed(self) -> bool:
        """True if any cell recorded a failure."""
        return any(cell.failed for cell in self.cells)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to a JSON-ready mapping."""
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "plan": self.plan.to_dict(),
            "cells": [cell.to_dict() for cell in self.cells],
            "term_counts": [row.to_dict() for row in self.term_counts],
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "ExperimentReport":
        """Inverse of :meth:`to_dict`.

        :raises ReportIOError: On a schema version mismatch
        """
        version = payload.get("schema_version")
        if version != REPORT_SCHEMA_VERSION:
            raise ReportIOError(
                f"Report schema {version} is not {REPORT_SCHEMA_VERSION}"
            )
        return cls(
            plan=ExperimentPlan.from_dict(payload["plan"]),
            cells=tuple(CellResult.from_dict(c) for c in payload["cells"]),
            term_counts=tuple(
                TermCountRow(**row) for row in payload.get("term_counts", ())
            ),
        )
