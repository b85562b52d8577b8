"""JSON instance documents.

Costs travel as strings (``"-3.5"``, ``"2/3"``, ``"inf"``) so that exact
rationals survive the round trip.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import CopicError, DiagonalCosts, Instance, format_cost, to_cost, validate_instance
from .families import (
    BipartitePerfectMatching,
    GraphicMatroid,
    PartitionMatroid,
    StPath,
    Unconstrained,
    UniformMatroid,
)
from .reductions import KCardCutInstance


class DocumentError(CopicError):
    """The input document is malformed."""


def _cost(x: Any):
    if not isinstance(x, str):
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        raise DocumentError(f"costs must be strings, got {x!r}")
    return to_cost(x)


def _int(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise DocumentError(f"field {key!r} must be an integer")
    return v


def parse_family(obj: Any, size: int):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DocumentError("family must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "unconstrained":
        return Unconstrained(size)
    if kind == "uniform":
        return UniformMatroid(size, _int(obj, "k"))
    if kind == "partition":
        return PartitionMatroid(tuple(tuple(p) for p in obj["parts"]), tuple(obj["quotas"]))
    if kind == "graphic":
        return GraphicMatroid(_int(obj, "vertices"), tuple(tuple(e) for e in obj["edges"]))
    if kind == "stpath":
        return StPath(_int(obj, "vertices"), tuple(tuple(e) for e in obj["edges"]),
                      _int(obj, "s"), _int(obj, "t"), bool(obj.get("directed", True)))
    if kind == "pm":
        return BipartitePerfectMatching(_int(obj, "p"))
    raise DocumentError(f"unknown family kind {kind!r}")


def family_to_json(family) -> dict:
    if isinstance(family, Unconstrained):
        return {"kind": "unconstrained"}
    if isinstance(family, UniformMatroid):
        return {"kind": "uniform", "k": family.k}
    if isinstance(family, PartitionMatroid):
        return {"kind": "partition", "parts": [list(p) for p in family.parts],
                "quotas": list(family.quotas)}
    if isinstance(family, GraphicMatroid):
        return {"kind": "graphic", "vertices": family.vertices,
                "edges": [list(e) for e in family.edges]}
    if isinstance(family, StPath):
        return {"kind": "stpath", "vertices": family.vertices,
                "edges": [list(e) for e in family.edges], "directed": family.directed,
                "s": family.s, "t": family.t}
    if isinstance(family, BipartitePerfectMatching):
        return {"kind": "pm", "p": family.p}
    raise TypeError(f"cannot serialise {type(family).__name__}")


def parse_instance(doc: Any) -> Instance:
    try:
        m, n = _int(doc, "m"), _int(doc, "n")
        qdoc = doc["q"]
        if "dense" in qdoc:
            q = tuple(tuple(_cost(x) for x in row) for row in qdoc["dense"])
        elif "diag" in qdoc:
            q = DiagonalCosts(tuple(_cost(x) for x in qdoc["diag"]))
        else:
            raise DocumentError("q needs a 'dense' or 'diag' member")
        inst = Instance(m, n, q, tuple(_cost(x) for x in doc["c"]),
                        tuple(_cost(x) for x in doc["d"]),
                        parse_family(doc["family1"], m), parse_family(doc["family2"], n))
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DocumentError(f"malformed instance: {exc}") from exc
    problems = validate_instance(inst)
    if problems:
        raise DocumentError("invalid instance: " + "; ".join(problems))
    return inst


def instance_to_json(inst: Instance) -> dict:
    if inst.is_diagonal:
        q = {"diag": [format_cost(x) for x in inst.q.a]}
    else:
        q = {"dense": [[format_cost(x) for x in row] for row in inst.q]}
    return {"m": inst.m, "n": inst.n,
            "family1": family_to_json(inst.family1), "family2": family_to_json(inst.family2),
            "q": q, "c": [format_cost(x) for x in inst.c], "d": [format_cost(x) for x in inst.d]}


def parse_kcard(doc: Any) -> KCardCutInstance:
    try:
        q = tuple(tuple(_cost(x) for x in row) for row in doc["q"])
        return KCardCutInstance(_int(doc, "m"), _int(doc, "n"), q, _int(doc, "k"))
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DocumentError(f"malformed k-card cut instance: {exc}") from exc


def kcard_to_json(inst: KCardCutInstance) -> dict:
    return {"m": inst.m, "n": inst.n, "k": inst.k,
            "q": [[format_cost(x) for x in row] for row in inst.q]}


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2)
