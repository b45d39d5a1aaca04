"""Conversion of computation results into deterministic JSON."""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction

SCHEMA = "weylkit/1"


def jsonable(obj):
    """Recursively turn results into plain JSON data.

    Rationals become strings, tuples become lists, and objects with a
    ``to_json`` method are asked to serialize themselves.
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Fraction) or type(obj).__name__ == "mpq":
        return str(obj)
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(v) for v in obj), key=repr)
    if is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    return str(obj)


def dumps(payload: dict) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def envelope(command: str, config: dict, result, ok: bool) -> dict:
    return {"schema": SCHEMA, "command": command, "config": config, "ok": ok, "result": result}
