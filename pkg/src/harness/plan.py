"""Experiment plans.

A plan names the grid of sizes and densities, the number of instances per
cell, the methods to compare and their parameter overrides. Every seed in a
run is derived from the plan's ``base_seed``:

* instance seed: ``derive_seed(base_seed, n, delta_index, index)``
* method seed: ``derive_seed(instance_seed, method)``

so all methods in a cell see the same instances while drawing from
independent sampler streams.

Dependencies:
    - dataclasses: Immutable plan container
    - hashlib / json: Content-addressed cell keys
    - src.core.serialization: Plan files
    - src.qkp.methods: Method names and per-method defaults
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Tuple, Union

from src.config import (
    DEFAULT_BASE_SEED,
    DEFAULT_DENSITIES,
    DEFAULT_INSTANCES_PER_CELL,
    DEFAULT_SIZES,
    REPORT_SCHEMA_VERSION,
)
from src.core.exceptions import ConfigError
from src.core.seeds import derive_seed
from src.core.serialization import read_json
from src.core.validation import validate_at_least
from src.ohzeki.state import SolverConfig
from src.qkp.exact import ORACLE_METHODS
from src.qkp.methods import METHODS, default_sampler_config
from src.samplers.base import SamplerConfig

DEFAULT_PLAN_METHODS: Tuple[str, ...] = ("om_mcmc", "om_sqa", "naive", "greedy")

Settings = Mapping[str, Mapping[str, Any]]


@dataclass(frozen=True)
class ExperimentPlan:
    """Benchmark grid and method parameters.

    :param sizes: Item counts N
    :type sizes: Tuple[int, ...]
    :param densities: Densities Δ
    :type densities: Tuple[float, ...]
    :param instances_per_cell: Instances per (N, Δ) cell
    :type instances_per_cell: int
    :param methods: Methods to compare
    :type methods: Tuple[str, ...]
    :param sampler_settings: Per-method SamplerConfig overrides
    :type sampler_settings: Mapping[str, Mapping[str, Any]]
    :param solver_settings: Per-method SolverConfig overrides
    :type solver_settings: Mapping[str, Mapping[str, Any]]
    :param base_seed: Root of every derived seed
    :type base_seed: int
    :param oracle: Exact oracle, ``bnb`` or ``enumerate``
    :type oracle: str
    """

    sizes: Tuple[int, ...] = DEFAULT_SIZES
    densities: Tuple[float, ...] = DEFAULT_DENSITIES
    instances_per_cell: int = DEFAULT_INSTANCES_PER_CELL
    methods: Tuple[str, ...] = DEFAULT_PLAN_METHODS
    sampler_settings: Settings = field(default_factory=dict)
    solver_settings: Settings = field(default_factory=dict)
    base_seed: int = DEFAULT_BASE_SEED
    oracle: str = "bnb"

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        object.__setattr__(
            self, "densities", tuple(float(d) for d in self.densities)
        )
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.sizes or not self.densities or not self.methods:
            raise ConfigError("sizes, densities and methods must be non-empty")
        validate_at_least("instances_per_cell", self.instances_per_cell, 1)
        for n in self.sizes:
            validate_at_least("size", n, 1)
        for delta in self.densities:
            if not 0.0 < delta <= 1.0:
                raise ConfigError(f"Density must lie in (0, 1], got {delta}")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ConfigError(f"Unknown methods {sorted(unknown)}")
        if self.oracle not in ORACLE_METHODS:
            raise ConfigError(f"oracle must be one of {ORACLE_METHODS}")
        for table in (self.sampler_settings, self.solver_settings):
            stray = set(table) - set(self.methods)
            if stray:
                raise ConfigError(f"Settings for methods not in plan: {sorted(stray)}")
        # every override must build a valid config
        for method in self.methods:
            self.sampler_config(method, 0)
            self.solver_config(method)

    def sampler_config(self, method: str, seed: int) -> SamplerConfig:
        """Sampler parameters for a method, seeded.

        :param method: Method name
        :type method: str
        :param seed: Method-level seed
        :type seed: int
        :return: Sampler configuration
        :rtype: SamplerConfig
        """
        values = asdict(default_sampler_config(method))
        values.update(self.sampler_settings.get(method, {}))
        values["seed"] = seed
        return SamplerConfig.from_mapping(values)

    def solver_config(self, method: str) -> SolverConfig:
        """Solver parameters for a method.

        :param method: Method name
        :type method: str
        :return: Solver configuration
        :rtype: SolverConfig
        """
        return SolverConfig.from_mapping(self.solver_settings.get(method, {}))

    def instance_seed(self, n: int, delta_index: int, index: int) -> int:
        """Seed of instance ``index`` in cell ``(n, densities[delta_index])``."""
        return derive_seed(self.base_seed, n, delta_index, index)

    @staticmethod
    def method_seed(instance_seed: int, method: str) -> int:
        """Sampler seed of a method on an instance."""
        return derive_seed(instance_seed, method)

    def cells(self) -> Tuple[Tuple[int, int], ...]:
        """``(n, delta_index)`` pairs in plan order."""
        return tuple(
            (n, d) for n in self.sizes for d in range(len(self.densities))
        )

    def cell_key(self, n: int, delta_index: int) -> str:
        """Content hash of everything that determines a cell's results.

        :param n: Item count
        :type n: int
        :param delta_index: Position of the density in ``densities``
        :type delta_index: int
        :return: Hex digest
        :rtype: str
        """
        payload = {
            "schema": REPORT_SCHEMA_VERSION,
            "n": n,
            "delta": self.densities[delta_index],
            "delta_index": delta_index,
            "instances": self.instances_per_cell,
            "methods": list(self.methods),
            "sampler": {
                m: asdict(self.sampler_config(m, 0)) for m in self.methods
            },
            "solver": {m: asdict(self.solver_config(m)) for m in self.methods},
            "base_seed": self.base_seed,
            "oracle": self.oracle,
        }
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready mapping mirroring the dataclass fields."""
        return {
            "sizes": list(self.sizes),
            "densities": list(self.densities),
            "instances_per_cell": self.instances_per_cell,
            "methods": list(self.methods),
            "sampler_settings": {k: dict(v) for k, v in self.sampler_settings.items()},
            "solver_settings": {k: dict(v) for k, v in self.solver_settings.items()},
            "base_seed": self.base_seed,
            "oracle": self.oracle,
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "ExperimentPlan":
        """Build from a plan-file mapping, rejecting unknown keys.

        :param payload: Mapping with any subset of the plan fields
        :type payload: Mapping[str, Any]
        :return: Plan
        :rtype: ExperimentPlan
        :raises ConfigError: On unknown keys or invalid values
        """
        unknown = set(payload) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"Unknown plan fields: {sorted(unknown)}")
        values = dict(payload)
        for key in ("sizes", "densities", "methods"):
            if key in values:
                values[key] = tuple(values[key])
        return cls(**values)


def load_plan(path: Union[str, Path]) -> ExperimentPlan:
    """Read a JSON plan file.

    :param path: Plan file
    :type path: Union[str, Path]
    :return: Plan
    :rtype: ExperimentPlan
    :raises ReportIOError: If the file cannot be read
    :raises ConfigError: If the plan is invalid
    """
    payload = read_json(path)
    if not isinstance(payload, dict):
        raise ConfigError(f"Plan file {path} must hold a JSON object")
    return ExperimentPlan.from_dict(payload)
