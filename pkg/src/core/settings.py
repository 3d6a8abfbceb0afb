"""Configuration-file loading.

Sampler and solver parameters may be supplied in a TOML or JSON file with
``[sampler]`` and ``[solver]`` tables. Values from the file override
defaults; explicit CLI flags override the file.

Dependencies:
    - tomllib: TOML parsing
    - pathlib: Path operations
    - src.core.serialization: JSON reading
    - src.core.exceptions: ConfigError, ReportIOError
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib  # type: ignore[no-redef]
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from src.core.exceptions import ConfigError, ReportIOError
from src.core.serialization import read_json

SECTIONS = ("sampler", "solver")


def load_settings(path: Union[str, Path]) -> Dict[str, Dict[str, Any]]:
    """Load sampler/solver tables from a TOML or JSON file.

    :param path: Path ending in ``.toml`` or ``.json``
    :type path: Union[str, Path]
    :return: Mapping with keys ``sampler`` and ``solver``
    :rtype: Dict[str, Dict[str, Any]]
    :raises ConfigError: On unknown suffix or unknown top-level table
    :raises ReportIOError: If the file cannot be read
    """
    source = Path(path)
    if source.suffix == ".toml":
        try:
            with open(source, "rb") as handle:
                raw: Any = tomllib.load(handle)
        except OSError as e:
            raise ReportIOError(f"Cannot read {source}: {e}") from e
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"Invalid TOML in {source}: {e}") from e
    elif source.suffix == ".json":
        raw = read_json(source)
    else:
        raise ConfigError(
            f"Config file must end in .toml or .json, got {source.name}"
        )

    if not isinstance(raw, dict):
        raise ConfigError(f"Config file {source} must hold a table")
    unknown = set(raw) - set(SECTIONS)
    if unknown:
        raise ConfigError(
            f"Unknown config tables in {source}: {sorted(unknown)}"
        )
    return {section: dict(raw.get(section, {})) for section in SECTIONS}


def merge_overrides(
    base: Mapping[str, Any], overrides: Mapping[str, Optional[Any]]
) -> Dict[str, Any]:
    """Overlay non-None overrides onto a base mapping.

    :param base: Values from defaults or a config file
    :type base: Mapping[str, Any]
    :param overrides: Explicit values, None meaning "not given"
    :type overrides: Mapping[str, Optional[Any]]
    :return: Merged mapping
    :rtype: Dict[str, Any]
    """
    merged = dict(base)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return merged
