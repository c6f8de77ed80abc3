"""JSON documents for forms, chains and 3-d vector fields.

All ring elements are written as strings so nothing is lost to float
conversion. Grids are flattened row-major (last coordinate fastest).
Dumping is canonical: ``dumps(loads(text)) == text`` for any document
produced by :func:`dumps`.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .chains import Chain, cell
from .errors import FormatError, ValidationError
from .forms import Box, GridForm, make_form
from .ring import Ring, RingSpec, ring_from_spec
from .vec3 import VectorField3

VEC3_KIND = "vecfield3"


def _index_key(index) -> str:
    return ",".join(str(i) for i in index)


def _parse_index_key(key: str) -> tuple[int, ...]:
    if key == "":
        return ()
    try:
        return tuple(int(part) for part in key.split(","))
    except ValueError as exc:
        raise FormatError(f"bad multi-index key {key!r}") from exc


def _flatten(ring: Ring, arr: np.ndarray) -> list[str]:
    return [ring.format(x) for x in np.asarray(arr).reshape(-1)]


def _grid(ring: Ring, values, box: Box, label: str) -> np.ndarray:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise FormatError(f"{label}: values must be a list of strings")
    if len(values) != box.size:
        raise ValidationError(f"{label}: expected {box.size} values, got {len(values)}")
    parsed = [ring.parse(v) for v in values]
    out = np.empty(box.size, dtype=object)
    out[:] = parsed
    return out.reshape(box.extents)


def _require(obj: dict, *keys: str):
    if not isinstance(obj, dict):
        raise FormatError("document must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"missing keys {missing}")


def _int(value, label: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{label} must be an integer, got {value!r}")
    return value


def _box(obj: dict) -> Box:
    d = _int(obj["dimension"], "dimension")
    extents = obj["extents"]
    if not isinstance(extents, list) or len(extents) != d:
        raise ValidationError(f"extents must be a list of {d} integers")
    return Box(tuple(_int(n, "extent") for n in extents))


def form_to_json(form: GridForm) -> dict[str, Any]:
    return {
        "dimension": form.dimension,
        "extents": list(form.box.extents),
        "ring": form.ring.spec.to_json(),
        "degree": form.degree,
        "components": {_index_key(I): _flatten(form.ring, arr) for I, arr in form.components.items()},
    }


def form_from_json(obj: dict) -> GridForm:
    _require(obj, "dimension", "extents", "ring", "degree", "components")
    box = _box(obj)
    ring = ring_from_spec(RingSpec.from_json(obj["ring"]))
    degree = _int(obj["degree"], "degree")
    comps = obj["components"]
    if not isinstance(comps, dict):
        raise FormatError("components must be an object")
    grids = {_parse_index_key(k): _grid(ring, v, box, f"component {k!r}") for k, v in comps.items()}
    return make_form(ring, box, degree, grids)


def chain_to_json(chain: Chain) -> dict[str, Any]:
    return {
        "dimension": chain.dimension,
        "degree": chain.degree,
        "ring": chain.ring.spec.to_json(),
        "cells": [
            {"base": list(c.base), "dirs": list(c.dirs), "coeff": chain.ring.format(r)}
            for c, r in chain.terms
        ],
    }


def chain_from_json(obj: dict) -> Chain:
    _require(obj, "dimension", "degree", "ring", "cells")
    ring = ring_from_spec(RingSpec.from_json(obj["ring"]))
    d = _int(obj["dimension"], "dimension")
    q = _int(obj["degree"], "degree")
    if not isinstance(obj["cells"], list):
        raise FormatError("cells must be a list")
    terms = []
    for entry in obj["cells"]:
        _require(entry, "base", "dirs", "coeff")
        if not isinstance(entry["coeff"], str):
            raise FormatError("cell coefficients must be strings")
        c = cell([_int(a, "base") for a in entry["base"]], [_int(l, "dirs") for l in entry["dirs"]])
        terms.append((c, ring.parse(entry["coeff"])))
    return Chain.from_terms(ring, d, q, terms)


def vecfield_to_json(field: VectorField3) -> dict[str, Any]:
    return {
        "kind": VEC3_KIND,
        "dimension": 3,
        "extents": list(field.box.extents),
        "ring": field.ring.spec.to_json(),
        "components": {
            name: _flatten(field.ring, arr) for name, arr in zip(("a1", "a2", "a3"), field.comps)
        },
    }


def vecfield_from_json(obj: dict) -> VectorField3:
    _require(obj, "kind", "dimension", "extents", "ring", "components")
    if obj["kind"] != VEC3_KIND:
        raise FormatError(f"kind must be {VEC3_KIND!r}")
    box = _box(obj)
    ring = ring_from_spec(RingSpec.from_json(obj["ring"]))
    comps = obj["components"]
    if not isinstance(comps, dict) or sorted(comps) != ["a1", "a2", "a3"]:
        raise ValidationError("vector field components must be exactly a1, a2, a3")
    return VectorField3.make(ring, box, *(_grid(ring, comps[k], box, k) for k in ("a1", "a2", "a3")))


def to_json(value) -> dict[str, Any]:
    if isinstance(value, GridForm):
        return form_to_json(value)
    if isinstance(value, Chain):
        return chain_to_json(value)
    if isinstance(value, VectorField3):
        return vecfield_to_json(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def from_json(obj: dict):
    """Decode any of the three document types, dispatching on their keys."""
    if not isinstance(obj, dict):
        raise FormatError("document must be a JSON object")
    if "kind" in obj:
        return vecfield_from_json(obj)
    if "cells" in obj:
        return chain_from_json(obj)
    return form_from_json(obj)


def dumps(value) -> str:
    return json.dumps(to_json(value), indent=2) + "\n"


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_json(obj)
