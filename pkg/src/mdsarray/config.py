"""Code-configuration documents: the JSON form of a CodeParams."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .code import CodeParams, build_code
from .errors import DimensionMismatch
from .matrices import MatrixSpec

CONFIG_KEYS = ("b", "m", "k", "poly", "matrix", "trusted")


def int_field(doc: dict, key: str) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise DimensionMismatch(f"config field {key!r} must be an integer, got {v!r}")
    return v


def spec_from_dict(d: Any) -> MatrixSpec:
    if not isinstance(d, dict):
        raise DimensionMismatch(f"matrix must be an object, got {d!r}")
    kind = d.get("kind")
    try:
        if kind == "vandermonde":
            return MatrixSpec.vandermonde([int(x) for x in d["points"]])
        if kind == "cauchy":
            return MatrixSpec.cauchy([int(x) for x in d["xs"]], [int(y) for y in d["ys"]])
        if kind == "explicit":
            return MatrixSpec.explicit([[int(x) for x in row] for row in d["sigma"]])
    except (KeyError, TypeError) as exc:
        raise DimensionMismatch(f"matrix {kind!r} is missing or has a malformed field: {exc}") from None
    raise DimensionMismatch(f"unknown matrix kind {kind!r}")


def params_from_config(doc: Any) -> CodeParams:
    if not isinstance(doc, dict):
        raise DimensionMismatch("config must be a JSON object")
    unknown = sorted(set(doc) - set(CONFIG_KEYS))
    if unknown:
        raise DimensionMismatch(f"unknown config fields {unknown}")
    b, m, k, poly = (int_field(doc, key) for key in ("b", "m", "k", "poly"))
    trusted = doc.get("trusted", False)
    if not isinstance(trusted, bool):
        raise DimensionMismatch(f"trusted must be true or false, got {trusted!r}")
    return build_code(b, m, k, poly, spec_from_dict(doc.get("matrix")), trusted)


def config_of(params: CodeParams) -> dict:
    return {
        "b": params.b,
        "m": params.m,
        "k": params.k,
        "poly": params.poly.to_int(),
        "matrix": params.spec.to_dict(),
        "trusted": params.trusted,
    }


def load_config(path: str | Path) -> CodeParams:
    """Read a JSON config file, or ``preset:NAME`` for a bundled configuration."""
    text = str(path)
    if text.startswith("preset:"):
        from .presets import PRESETS

        name = text.split(":", 1)[1]
        if name not in PRESETS:
            raise DimensionMismatch(f"unknown preset {name!r} (have {', '.join(sorted(PRESETS))})")
        return params_from_config(PRESETS[name])
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DimensionMismatch(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    return params_from_config(doc)
