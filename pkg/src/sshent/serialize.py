"""Deterministic CSV/JSON emission for scan results.

The CSV begins with a ``#schema=`` comment line followed by a header row; all
floats are rendered in their shortest round-trip form so identical inputs give
byte-identical files.  The JSON mirror carries the rows plus run metadata
(config digest, package and numpy versions).
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Any, Sequence

import numpy as np


def format_value(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return ""
        if x == 0.0:
            x = 0.0  # normalize -0.0
        return repr(x)  # shortest round-trip form; deterministic
    return str(x)


def render_csv(schema: str, columns: Sequence[str], rows: Sequence[dict]) -> str:
    lines = [f"#schema={schema}", ",".join(columns)]
    for row in rows:
        lines.append(",".join(format_value(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def write_csv(path: str, schema: str, columns: Sequence[str], rows: Sequence[dict]) -> None:
    text = render_csv(schema, columns, rows)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def config_digest(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _jsonable(x: Any) -> Any:
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        v = float(x)
        return None if math.isnan(v) else v
    if isinstance(x, float) and math.isnan(x):
        return None
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_jsonable(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")
