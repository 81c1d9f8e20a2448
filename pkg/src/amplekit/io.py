"""Facet-list text and JSON formats, canonical serialization and digests.

Text format: one facet per line as whitespace-separated vertex tokens, ``#``
starts a comment. A leading ``# name: <name>`` comment carries the name.
JSON format: ``{"name": str, "facets": [[str, ...], ...], "metadata": {...}}``.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .core import SimplicialComplex

NAME_PREFIX = "# name:"


@dataclass
class ComplexFile:
    complex: SimplicialComplex
    name: str = ""
    metadata: dict = field(default_factory=dict)


def canonical_facets(K: SimplicialComplex) -> list:
    return [list(f) for f in K.facets]


def canonical_text(K: SimplicialComplex) -> str:
    return "".join(" ".join(f) + "\n" for f in K.facets)


def digest(K: SimplicialComplex) -> str:
    """Lowercase hex SHA-256 of the canonical facet serialization."""
    return hashlib.sha256(canonical_text(K).encode("utf-8")).hexdigest()


def parse_text(text: str) -> ComplexFile:
    name = ""
    facets = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith(NAME_PREFIX) and not name:
            name = stripped[len(NAME_PREFIX):].strip()
            continue
        body = line.split("#", 1)[0].split()
        if body:
            facets.append(body)
    return ComplexFile(SimplicialComplex.from_facets(facets), name)


def format_text(cf: ComplexFile) -> str:
    head = f"{NAME_PREFIX} {cf.name}\n" if cf.name else ""
    return head + canonical_text(cf.complex)


def parse_json(text: str) -> ComplexFile:
    data = json.loads(text)
    if not isinstance(data, dict) or "facets" not in data:
        raise ValueError("JSON complex must be an object with a 'facets' array")
    facets = [[str(v) for v in f] for f in data["facets"]]
    return ComplexFile(SimplicialComplex.from_facets(facets),
                       str(data.get("name", "")), dict(data.get("metadata") or {}))


def format_json(cf: ComplexFile) -> str:
    data = {"name": cf.name, "facets": canonical_facets(cf.complex)}
    if cf.metadata:
        data["metadata"] = cf.metadata
    return json.dumps(data, sort_keys=True) + "\n"


def looks_like_json(path, text: str) -> bool:
    return str(path).endswith(".json") or text.lstrip().startswith("{")


def read_complex(path) -> ComplexFile:
    text = Path(path).read_text(encoding="utf-8")
    return parse_json(text) if looks_like_json(path, text) else parse_text(text)


def write_complex(cf: ComplexFile, path, fmt: str | None = None) -> None:
    fmt = fmt or ("json" if str(path).endswith(".json") else "text")
    out = format_json(cf) if fmt == "json" else format_text(cf)
    Path(path).write_text(out, encoding="utf-8")
