"""Poset documents (JSON) and DOT export."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .exceptions import PosetError
from .poset import Poset, build_poset


class MalformedDocument(PosetError):
    pass


def poset_to_doc(P: Poset, name: str = "") -> dict[str, Any]:
    return {
        "name": name,
        "elements": list(P.labels),
        "covers": [[P.labels[a], P.labels[b]] for a, b in P.sorted_covers()],
    }


def doc_to_poset(doc: Any) -> tuple[Poset, str]:
    """Parse a poset document; the covers must form a Hasse diagram."""
    if not isinstance(doc, dict):
        raise MalformedDocument("poset document must be a JSON object")
    elements = doc.get("elements")
    covers = doc.get("covers")
    name = doc.get("name", "")
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise MalformedDocument("'elements' must be a list of strings")
    if not isinstance(covers, list) or not all(
        isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c) for c in covers
    ):
        raise MalformedDocument("'covers' must be a list of 2-element string lists")
    if not isinstance(name, str):
        raise MalformedDocument("'name' must be a string")
    return build_poset(elements, [tuple(c) for c in covers]), name


def dumps(P: Poset, name: str = "") -> str:
    return json.dumps(poset_to_doc(P, name), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> tuple[Poset, str]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from None
    return doc_to_poset(doc)


def read_poset(path: str | Path) -> tuple[Poset, str]:
    return loads(Path(path).read_text(encoding="utf-8"))


def write_poset(P: Poset, path: str | Path, name: str = "") -> None:
    Path(path).write_text(dumps(P, name), encoding="utf-8")


def fingerprint(P: Poset) -> str:
    """Digest of the element set and cover set, independent of listing order."""
    doc = {
        "elements": sorted(P.labels),
        "covers": sorted([list(c) for c in P.cover_labels()]),
    }
    blob = json.dumps(doc, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return "sha256:" + hashlib.sha256(blob).hexdigest()[:16]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(P: Poset, name: str = "poset") -> str:
    """Hasse diagram drawn bottom to top, one layer per rank when graded."""
    lines = [f"digraph {_quote(name or 'poset')} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for label in P.labels:
        lines.append(f"  {_quote(label)};")
    for a, b in P.sorted_covers():
        lines.append(f"  {_quote(P.labels[a])} -> {_quote(P.labels[b])} [arrowhead=none];")
    graded, _ = P.grading()
    if graded and len(P):
        layers: dict[int, list[str]] = {}
        for i, h in enumerate(P.rank_function()):
            layers.setdefault(h, []).append(P.labels[i])
        for h in sorted(layers):
            members = "; ".join(_quote(s) for s in layers[h])
            lines.append(f"  {{ rank=same; {members}; }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
