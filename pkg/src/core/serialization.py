"""JSON persistence helpers.

All files written by the package go through these helpers so that I/O
failures surface as ``ReportIOError`` carrying the file path, and so that
output bytes are stable (sorted keys, fixed indentation, trailing newline).

Dependencies:
    - json: Encoding and decoding
    - pathlib: Path operations
    - src.core.exceptions: ReportIOError
"""

import json
from pathlib import Path
from typing import Any, Union

from src.core.exceptions import ReportIOError

PathLike = Union[str, Path]


def write_json(path: PathLike, payload: Any) -> Path:
    """Write a JSON document, creating parent directories.

    :param path: Destination file
    :type path: PathLike
    :param payload: JSON-serializable object
    :type payload: Any
    :return: The written path
    :rtype: Path
    :raises ReportIOError: If the file cannot be written
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")
    except OSError as e:
        raise ReportIOError(f"Cannot write {target}: {e}") from e
    return target


def read_json(path: PathLike) -> Any:
    """Read a JSON document.

    :param path: Source file
    :type path: PathLike
    :return: Decoded object
    :rtype: Any
    :raises ReportIOError: If the file cannot be read or parsed
    """
    source = Path(path)
    try:
        with open(source, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise ReportIOError(f"Cannot read {source}: {e}") from e
