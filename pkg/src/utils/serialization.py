"""Canonical JSON output helpers."""

import json
import math
from pathlib import Path
from typing import Any, Union

import numpy as np


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(item) for item in items]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        value = float(value)
    if isinstance(value, float) and not math.isfinite(value):
        # JSON has no infinity literal
        return str(value)
    return value


def to_canonical_json(payload: Any) -> str:
    """Serialize ``payload`` with sorted keys and a stable layout."""
    return json.dumps(_plain(payload), sort_keys=True, indent=2, ensure_ascii=False)


def write_json(payload: Any, path: Union[str, Path]) -> None:
    """Write canonical JSON to ``path`` with a trailing newline."""
    Path(path).write_text(to_canonical_json(payload) + "\n", encoding="utf-8")


def read_json(path: Union[str, Path]) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))
