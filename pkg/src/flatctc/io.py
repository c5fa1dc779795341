"""JSON document formats for isometries, groups and search results.

An isometry document is an object with a "linear" entry (3x3 nested
rows, or a flat row-major list of 9 numbers), a "translation" 3-array
and an optional "name".  A group document is an array of such objects.
Witness records carry the word as 1-based signed generator indices.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np

from .errors import FormatError, NotLorentzError
from .groups import CtcWitness, GroupPresentation
from .isometry import Isometry

__all__ = [
    "isometry_to_dict",
    "isometry_from_dict",
    "load_isometry",
    "save_isometry",
    "load_group",
    "save_group",
    "witness_to_dict",
]


def isometry_to_dict(iso: Isometry, name: Optional[str] = None) -> dict:
    doc = {
        "linear": [[float(x) for x in row] for row in iso.linear],
        "translation": [float(x) for x in iso.translation],
    }
    if name is not None:
        doc["name"] = name
    return doc


def _parse_linear(raw) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.shape == (9,):
        arr = arr.reshape(3, 3)  # row-major
    if arr.shape != (3, 3):
        raise FormatError(f"linear part must be 3x3 or a flat 9-list, got {raw!r}")
    return arr


def isometry_from_dict(doc: dict, *, unchecked: bool = False) -> tuple[Isometry, Optional[str]]:
    if not isinstance(doc, dict):
        raise FormatError("isometry document must be an object")
    try:
        linear = _parse_linear(doc["linear"])
        translation = np.asarray(doc["translation"], dtype=float).reshape(3)
    except KeyError as exc:
        raise FormatError(f"isometry document missing {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed isometry document: {exc}") from exc
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise FormatError("isometry name must be a string")
    return Isometry(linear, translation, unchecked=unchecked), name


def load_isometry(path: str) -> Isometry:
    """Load a single isometry document; NotLorentzError passes through so
    callers can distinguish parse failures from geometry failures."""
    doc = _load_json(path)
    iso, _ = isometry_from_dict(doc)
    return iso


def save_isometry(iso: Isometry, path: str, name: Optional[str] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(isometry_to_dict(iso, name), fh, indent=2)
        fh.write("\n")


def load_group(path: str, assume_free: bool = False) -> GroupPresentation:
    doc = _load_json(path)
    if not isinstance(doc, list) or not doc:
        raise FormatError("group document must be a non-empty array")
    gens = []
    names = []
    for k, entry in enumerate(doc):
        iso, name = isometry_from_dict(entry)
        gens.append(iso)
        names.append(name if name is not None else f"g{k + 1}")
    return GroupPresentation(tuple(gens), tuple(names), assume_free=assume_free)


def save_group(group: GroupPresentation, path: str) -> None:
    docs = [
        isometry_to_dict(iso, name)
        for iso, name in zip(group.generators, group.names)
    ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(docs, fh, indent=2)
        fh.write("\n")


def witness_to_dict(witness: CtcWitness) -> dict:
    d = witness.displacement
    return {
        "word": witness.word.signed_indices(),
        "power": witness.power,
        "displacement": [d.x, d.y, d.z],
        "B": witness.bvalue,
    }


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc}") from exc
