"""JSON construction trees for matroids.

Every :class:`~tanglekit.matroid.Matroid` records how it was made as a plain
dict; :func:`build` evaluates such a dict back into a matroid.  Sets inside
expressions are label lists.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import matroid as mt
from .errors import StructuralError

KINDS = (
    "uniform",
    "graphic",
    "linear",
    "rank_table",
    "dual",
    "delete",
    "contract",
    "direct_sum",
    "principal_extension",
)


def _field(expr: dict, name: str) -> Any:
    try:
        return expr[name]
    except KeyError:
        raise StructuralError(f"{expr.get('kind')!r} expression is missing field {name!r}") from None


def build(expr: dict) -> mt.Matroid:
    if not isinstance(expr, dict):
        raise StructuralError(f"expression must be an object, got {type(expr).__name__}")
    kind = expr.get("kind")
    if kind == "uniform":
        return mt.uniform(int(_field(expr, "rank")), int(_field(expr, "size")), expr.get("labels"))
    if kind == "graphic":
        return mt.graphic(int(_field(expr, "vertices")), _field(expr, "edges"), expr.get("labels"))
    if kind == "linear":
        return mt.linear(int(_field(expr, "prime")), _field(expr, "columns"), expr.get("labels"))
    if kind == "rank_table":
        return mt.from_rank_table(_field(expr, "labels"), _field(expr, "ranks"))
    if kind == "dual":
        return mt.dual(build(_field(expr, "of")))
    if kind in ("delete", "contract"):
        base = build(_field(expr, "of"))
        elements = _field(expr, "elements")
        if kind == "delete":
            return mt.delete(base, elements)
        return mt.contract(base, elements)
    if kind == "direct_sum":
        parts = [build(p) for p in _field(expr, "parts")]
        out = mt.direct_sum(*parts)
        if "relabel" in expr and expr["relabel"] != out.expr.get("relabel"):
            raise StructuralError("recorded relabelling disagrees with the deterministic one")
        return out
    if kind == "principal_extension":
        base = build(_field(expr, "of"))
        return mt.principal_extension(base, _field(expr, "flat"), str(_field(expr, "new")))
    raise StructuralError(f"unknown expression kind {kind!r}")


def dumps(expr: dict) -> str:
    return json.dumps(expr, separators=(",", ":"), ensure_ascii=False)


def load(path: str | Path) -> mt.Matroid:
    return build(json.loads(Path(path).read_text(encoding="utf-8")))


def parse(text_or_path: str) -> mt.Matroid:
    """Inline JSON (starting with ``{``) or a path to a JSON file."""
    s = text_or_path.strip()
    if s.startswith("{"):
        try:
            return build(json.loads(s))
        except json.JSONDecodeError as exc:
            raise StructuralError(f"bad inline expression: {exc}") from None
    try:
        return load(s)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{s}: not valid JSON ({exc})") from None
