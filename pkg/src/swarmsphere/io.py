"""Point-cloud files: CSV with an ``x,y,z`` header, or a JSON list of triples."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .geometry import as_cloud


class CloudFormatError(ValueError):
    pass


def _fmt(v: float) -> str:
    # repr round-trips a float64 exactly (up to 17 significant digits)
    return repr(float(v))


def parse_cloud_csv(text: str) -> np.ndarray:
    reader = csv.reader(io.StringIO(text))
    rows = []
    header_seen = False
    for lineno, row in enumerate(reader, start=1):
        if not row or all(not c.strip() for c in row):
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            header_seen = True
            if [c.lower() for c in cells] != ["x", "y", "z"]:
                raise CloudFormatError(f"line {lineno}: expected header 'x,y,z', got {','.join(cells)!r}")
            continue
        if len(cells) != 3:
            raise CloudFormatError(f"line {lineno}: expected 3 values, got {len(cells)}")
        try:
            vals = [float(c) for c in cells]
        except ValueError:
            raise CloudFormatError(f"line {lineno}: not a number in {','.join(cells)!r}") from None
        if not all(math.isfinite(v) for v in vals):
            raise CloudFormatError(f"line {lineno}: non-finite coordinate")
        rows.append(vals)
    if not header_seen:
        raise CloudFormatError("empty file")
    return np.array(rows, dtype=float).reshape(-1, 3)


def parse_cloud_json(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CloudFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise CloudFormatError("JSON cloud must be an array of [x, y, z] arrays")
    rows = []
    for i, item in enumerate(data):
        if (not isinstance(item, list) or len(item) != 3
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
            raise CloudFormatError(f"row {i}: expected [x, y, z], got {item!r}")
        if not all(math.isfinite(v) for v in item):
            raise CloudFormatError(f"row {i}: non-finite coordinate")
        rows.append([float(v) for v in item])
    return np.array(rows, dtype=float).reshape(-1, 3)


def read_cloud(path) -> np.ndarray:
    """Load a cloud from ``.csv`` or ``.json`` (sniffed from content otherwise).

    Raises
    ------
    CloudFormatError
        With the offending line (CSV) or row (JSON) in the message.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        cloud = parse_cloud_json(text)
    else:
        cloud = parse_cloud_csv(text)
    if len(cloud) == 0:
        raise CloudFormatError(f"{path}: no points")
    return cloud


def format_cloud_csv(cloud) -> str:
    cloud = as_cloud(cloud, allow_empty=True)
    lines = ["x,y,z"]
    lines += [",".join(_fmt(v) for v in row) for row in cloud]
    return "\n".join(lines) + "\n"


def write_cloud(path, cloud) -> None:
    """Write CSV, or JSON when ``path`` ends in ``.json``."""
    path = Path(path)
    cloud = as_cloud(cloud, allow_empty=True)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(cloud.tolist()) + "\n")
    else:
        path.write_text(format_cloud_csv(cloud))
