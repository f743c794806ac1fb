"""Relation files: ``{"space_dim": n, "pairs": [{"x": [...], "y": [...]}]}``.

Scalars are ``[re, im]`` pairs of rational strings.  Serialization always
emits the canonical graph basis, so equal relations produce identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .gaussian import GaussianRational
from .relation import LinearRelation, from_pairs

__all__ = [
    "SchemaError",
    "relation_from_json",
    "relation_to_json",
    "parse_relation",
    "serialize_relation",
    "load_relation",
    "dump_json",
]


class SchemaError(ValueError):
    """Malformed relation document; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _vector(raw: Any, n: int, path: str) -> list[GaussianRational]:
    if not isinstance(raw, list):
        raise SchemaError(path, "expected a list of scalars")
    if len(raw) != n:
        raise SchemaError(path, f"expected {n} entries, got {len(raw)}")
    out = []
    for k, item in enumerate(raw):
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(s, str) for s in item)):
            raise SchemaError(f"{path}[{k}]", f"scalar must be [re, im] strings, got {item!r}")
        try:
            out.append(GaussianRational.from_text(item))
        except ValueError as exc:
            raise SchemaError(f"{path}[{k}]", str(exc)) from None
    return out


def relation_from_json(doc: Any) -> LinearRelation:
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    extra = sorted(set(doc) - {"space_dim", "pairs"})
    if extra:
        raise SchemaError(f"$.{extra[0]}", "unknown field")
    for key in ("space_dim", "pairs"):
        if key not in doc:
            raise SchemaError(f"$.{key}", "missing field")
    n = doc["space_dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("$.space_dim", f"expected a positive integer, got {n!r}")
    pairs = doc["pairs"]
    if not isinstance(pairs, list):
        raise SchemaError("$.pairs", "expected a list")
    gens = []
    for j, pair in enumerate(pairs):
        path = f"$.pairs[{j}]"
        if not isinstance(pair, dict):
            raise SchemaError(path, "expected an object with x and y")
        extra = sorted(set(pair) - {"x", "y"})
        if extra:
            raise SchemaError(f"{path}.{extra[0]}", "unknown field")
        for key in ("x", "y"):
            if key not in pair:
                raise SchemaError(f"{path}.{key}", "missing field")
        gens.append((_vector(pair["x"], n, f"{path}.x"), _vector(pair["y"], n, f"{path}.y")))
    return from_pairs(n, gens)


def relation_to_json(t: LinearRelation) -> dict:
    return {
        "space_dim": t.space_dim,
        "pairs": [{"x": [c.to_text() for c in x], "y": [c.to_text() for c in y]}
                  for x, y in t.pairs],
    }


def _has_dict(x: Any) -> bool:
    if isinstance(x, dict):
        return True
    return isinstance(x, list) and any(_has_dict(v) for v in x)


def _render(x: Any, indent: int) -> str:
    # dict-free lists (vectors, scalars, profiles) stay on one line
    if not _has_dict(x):
        return json.dumps(x, ensure_ascii=False, separators=(", ", ": "))
    pad = " " * (indent + 2)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render(v, indent + 2)}"
                 for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    items = [pad + _render(v, indent + 2) for v in x]
    return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"


def dump_json(doc: Any) -> str:
    """Deterministic indented JSON with a trailing newline."""
    return _render(doc, 0) + "\n"


def serialize_relation(t: LinearRelation) -> str:
    """Canonical text: one generator pair per line."""
    doc = relation_to_json(t)
    lines = [json.dumps(p, separators=(", ", ": ")) for p in doc["pairs"]]
    body = ",\n    ".join(lines)
    pairs = f"[\n    {body}\n  ]" if lines else "[]"
    return f'{{\n  "space_dim": {doc["space_dim"]},\n  "pairs": {pairs}\n}}\n'


def parse_relation(text: str) -> LinearRelation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return relation_from_json(doc)


def load_relation(path: Union[str, Path]) -> LinearRelation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(str(path), exc.strerror or str(exc)) from None
    try:
        return parse_relation(text)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc.path}", str(exc).split(": ", 1)[1]) from None
