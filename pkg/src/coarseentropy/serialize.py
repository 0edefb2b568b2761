"""Deterministic report rendering: versioned JSON, CSV, and JSON-lines orbits.

Every report is a plain JSON-able document wrapped in an envelope carrying
the schema version.  Rendering is fully deterministic: keys are sorted, no
timestamps or machine identifiers are embedded, and exact rationals are
kept as "p/q" strings so nothing is lost to binary floating point.  The
CSV rendering flattens the same document into ``field,value,decimal`` rows
whose ``value`` column carries the very same tokens as the JSON text, with
a convenience decimal column for spreadsheet use.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidInputError
from .numbers import Dist, dist_to_jsonable, parse_dist
from .paths import DeltaPath, OrbitSet

__all__ = [
    "SCHEMA_VERSION",
    "envelope",
    "to_json",
    "to_csv",
    "write_report",
    "point_to_jsonable",
    "point_from_jsonable",
    "orbits_to_json_lines",
    "orbits_from_json_lines",
    "load_edge_list",
]

SCHEMA_VERSION = "v1"


def envelope(kind: str, report: Dict[str, Any]) -> Dict[str, Any]:
    """Wrap a report payload with the schema version and report kind."""
    if not isinstance(kind, str) or not kind:
        raise InvalidInputError("report kind must be a nonempty string")
    return {"schema": SCHEMA_VERSION, "kind": kind, "report": report}


def _jsonable(value: Any) -> Any:
    """Normalize a value into JSON-safe, deterministic form."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return dist_to_jsonable(value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            raise InvalidInputError("NaN cannot appear in a report")
        return value
    if isinstance(value, dict):
        out = {}
        for key, item in value.items():
            if not isinstance(key, str):
                key = str(_jsonable(key))
            out[key] = _jsonable(item)
        return out
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (set, frozenset)):
        return sorted(str(_jsonable(item)) for item in value)
    if hasattr(value, "to_jsonable"):
        return _jsonable(value.to_jsonable())
    raise InvalidInputError(f"cannot serialize value of type {type(value).__name__}")


def to_json(doc: Dict[str, Any]) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flatten(prefix: str, value: Any, rows: List[Tuple[str, Any]]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            path = f"{prefix}.{key}" if prefix else str(key)
            _flatten(path, value[key], rows)
    elif isinstance(value, list):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, rows)
    else:
        rows.append((prefix, value))


def _json_token(value: Any) -> str:
    """The exact token the JSON rendering uses for a scalar."""
    return json.dumps(value, ensure_ascii=False)


def _decimal_of(value: Any) -> str:
    """Best-effort decimal rendering of a numeric scalar; empty otherwise."""
    if isinstance(value, bool) or value is None:
        return ""
    if isinstance(value, (int, float)):
        return repr(float(value))
    if isinstance(value, str):
        try:
            num = parse_dist(value)
        except (ValueError, TypeError):
            return ""
        return repr(float(num))
    return ""


def to_csv(doc: Dict[str, Any]) -> str:
    """Flatten the report document into ``field,value,decimal`` rows.

    The ``value`` column repeats the exact JSON token for the leaf (so the
    two renderings carry identical numeric values); ``decimal`` adds a
    plain float reading for numeric leaves, including "p/q" rationals.
    """
    flat: List[Tuple[str, Any]] = []
    _flatten("", _jsonable(doc), flat)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["field", "value", "decimal"])
    for path, value in flat:
        writer.writerow([path, _json_token(value), _decimal_of(value)])
    return buffer.getvalue()


def write_report(doc: Dict[str, Any], out: Optional[str], fmt: str = "json") -> str:
    """Render the document and write it to a path or stdout; returns the text."""
    if fmt == "json":
        text = to_json(doc)
    elif fmt == "csv":
        text = to_csv(doc)
    else:
        raise InvalidInputError(f"unknown output format {fmt!r}; use json or csv")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


# ---------------------------------------------------------------------------
# point and orbit encodings


def point_to_jsonable(point: Any) -> Any:
    """Canonical JSON encoding of a space point (tuples become lists)."""
    if isinstance(point, tuple):
        return [point_to_jsonable(p) for p in point]
    if isinstance(point, Fraction):
        return dist_to_jsonable(point)
    if isinstance(point, (int, str)):
        return point
    if isinstance(point, float):
        return point
    raise InvalidInputError(f"cannot encode point of type {type(point).__name__}")


def point_from_jsonable(obj: Any) -> Any:
    """Inverse of :func:`point_to_jsonable` (lists become tuples)."""
    if isinstance(obj, list):
        return tuple(point_from_jsonable(p) for p in obj)
    return obj


def orbits_to_json_lines(orbits: OrbitSet) -> str:
    """One JSON document per line: a header line, then one path per line."""
    header = {
        "schema": SCHEMA_VERSION,
        "kind": "orbit-set",
        "x0": point_to_jsonable(orbits.x0),
        "n": orbits.n,
        "delta": dist_to_jsonable(orbits.delta),
        "count": len(orbits.paths),
        "exhaustive": orbits.exhaustive,
        "map_label": orbits.map_label,
    }
    lines = [json.dumps(header, sort_keys=True, ensure_ascii=False)]
    for path in orbits.paths:
        lines.append(json.dumps([point_to_jsonable(p) for p in path.points],
                                sort_keys=True, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def orbits_from_json_lines(text: str) -> OrbitSet:
    """Parse the JSON-lines orbit format back into an OrbitSet."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidInputError("empty orbit file")
    header = json.loads(lines[0])
    if not isinstance(header, dict) or header.get("kind") != "orbit-set":
        raise InvalidInputError("orbit file must start with an orbit-set header line")
    if header.get("schema") != SCHEMA_VERSION:
        raise InvalidInputError(f"unsupported orbit schema {header.get('schema')!r}")
    delta = header["delta"]
    if isinstance(delta, str):
        delta = parse_dist(delta)
    paths = []
    for line in lines[1:]:
        points = tuple(point_from_jsonable(p) for p in json.loads(line))
        paths.append(DeltaPath(points, delta))
    if len(paths) != header.get("count"):
        raise InvalidInputError(
            f"orbit file header announces {header.get('count')} paths, found {len(paths)}")
    return OrbitSet(tuple(paths), x0=point_from_jsonable(header["x0"]),
                    n=int(header["n"]), delta=delta,
                    exhaustive=bool(header.get("exhaustive", False)),
                    map_label=str(header.get("map_label", "identity")))


# ---------------------------------------------------------------------------
# edge-list ingestion


def load_edge_list(path: str) -> Tuple[List[Tuple[Any, Any, Dist]], bool]:
    """Read a CSV edge list with header ``src,dst[,weight]``.

    Thin normalization over :func:`coarseentropy.spaces.base.load_edges_csv`:
    every edge comes back as a ``(src, dst, weight)`` triple (weight 1 for
    unweighted files) plus a flag recording whether the file declared a
    weight column.
    """
    from .spaces.base import load_edges_csv

    edges, weighted = load_edges_csv(path)
    if not edges:
        raise InvalidInputError(f"edge file {path!r} contains no edges")
    if weighted:
        return [tuple(e) for e in edges], True
    return [(a, b, 1) for a, b in edges], False
