"""JSON forms of the domain types, validated with jsonschema.

Every document carries ``"format": 1``.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .errors import InputError
from .geometry import ContactArc, LatticePoint, Point, Polyline, TangentSegment, TautPath
from .paramcode import ParamSequence
from .satellite import SatelliteSpec

FORMAT = 1

_int = {"type": "integer"}
_num = {"type": "number"}
_lattice = {"type": "array", "items": _int, "minItems": 2, "maxItems": 2}
_point = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_format = {"const": FORMAT}

SCHEMAS: dict[str, dict] = {
    "polyline": {
        "type": "object",
        "required": ["eps", "start", "end", "vertices"],
        "properties": {
            "format": _format,
            "eps": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 0.5},
            "start": _lattice,
            "end": _lattice,
            "vertices": {"type": "array", "items": _point, "minItems": 2},
        },
        "additionalProperties": False,
    },
    "sequence": {
        "type": "object",
        "required": ["triples", "tail"],
        "properties": {
            "format": _format,
            "triples": {"type": "array", "items": {"type": "array", "items": _int, "minItems": 3, "maxItems": 3}},
            "tail": _lattice,
        },
        "additionalProperties": False,
    },
    "satellite": {
        "type": "object",
        "required": ["alpha", "beta", "p", "q"],
        "properties": {
            "format": _format,
            "alpha": _int,
            "beta": _int,
            "p": {"oneOf": [_int, {"const": "p"}]},
            "q": {"oneOf": [_int, {"const": "q"}]},
        },
        "additionalProperties": False,
    },
    "taut_path": {
        "type": "object",
        "required": ["eps", "start", "end", "segments", "arcs"],
        "properties": {
            "format": _format,
            "eps": _num,
            "start": _lattice,
            "end": _lattice,
            "segments": {"type": "array", "items": {
                "type": "object",
                "required": ["start", "end", "from", "to"],
                "properties": {"start": _point, "end": _point,
                               "from": {"oneOf": [_lattice, {"type": "null"}]},
                               "to": {"oneOf": [_lattice, {"type": "null"}]}},
            }},
            "arcs": {"type": "array", "items": {
                "type": "object",
                "required": ["center", "angle_start", "turn", "side"],
                "properties": {"center": _lattice, "angle_start": _num, "turn": _num,
                               "side": {"enum": [1, -1]}},
            }},
        },
    },
}


def check(kind: str, doc: Any) -> None:
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{kind} JSON invalid at {where}: {exc.message}") from None


def _lp(v) -> LatticePoint:
    return LatticePoint(int(v[0]), int(v[1]))


# -- to JSON ---------------------------------------------------------------------

def polyline_to_json(poly: Polyline) -> dict:
    return {"format": FORMAT, "eps": poly.eps, "start": list(poly.start), "end": list(poly.end),
            "vertices": [list(v) for v in poly.vertices]}


def sequence_to_json(seq: ParamSequence) -> dict:
    return {"format": FORMAT, "triples": [list(t) for t in seq.triples], "tail": list(seq.tail)}


def satellite_to_json(spec: SatelliteSpec) -> dict:
    return {"format": FORMAT, "alpha": spec.alpha, "beta": spec.beta, "p": spec.p, "q": spec.q}


def path_to_json(path: TautPath) -> dict:
    return {
        "format": FORMAT, "eps": path.eps, "start": list(path.start), "end": list(path.end),
        "segments": [{"start": list(s.start), "end": list(s.end),
                      "from": None if s.from_circle is None else list(s.from_circle),
                      "to": None if s.to_circle is None else list(s.to_circle)} for s in path.segments],
        "arcs": [{"center": list(a.center), "angle_start": a.angle_start, "turn": a.turn, "side": a.side}
                 for a in path.arcs],
    }


# -- from JSON -------------------------------------------------------------------

def polyline_from_json(doc: dict) -> Polyline:
    check("polyline", doc)
    return Polyline(tuple(Point(*v) for v in doc["vertices"]), _lp(doc["start"]), _lp(doc["end"]), doc["eps"])


def sequence_from_json(doc: dict) -> ParamSequence:
    check("sequence", doc)
    return ParamSequence(tuple(tuple(t) for t in doc["triples"]), tuple(doc["tail"]))


def satellite_from_json(doc: dict) -> SatelliteSpec:
    check("satellite", doc)
    return SatelliteSpec(doc["alpha"], doc["beta"], doc["p"], doc["q"])


def path_from_json(doc: dict) -> TautPath:
    check("taut_path", doc)
    segs = tuple(TangentSegment(Point(*s["start"]), Point(*s["end"]),
                                None if s["from"] is None else _lp(s["from"]),
                                None if s["to"] is None else _lp(s["to"])) for s in doc["segments"])
    arcs = tuple(ContactArc(_lp(a["center"]), a["angle_start"], a["turn"], a["side"]) for a in doc["arcs"])
    return TautPath(segs, arcs, doc["eps"], _lp(doc["start"]), _lp(doc["end"]))


_READERS = {"polyline": polyline_from_json, "sequence": sequence_from_json,
            "satellite": satellite_from_json, "taut_path": path_from_json}
_WRITERS = {Polyline: polyline_to_json, ParamSequence: sequence_to_json,
            SatelliteSpec: satellite_to_json, TautPath: path_to_json}


def to_json(obj) -> dict:
    return _WRITERS[type(obj)](obj)


def from_json(kind: str, doc: dict):
    return _READERS[kind](doc)


def dumps(obj) -> str:
    return json.dumps(to_json(obj), indent=2, sort_keys=True)


def loads(kind: str, text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    return from_json(kind, doc)


def sniff(doc: Any) -> str:
    """Guess which document kind ``doc`` is."""
    if isinstance(doc, dict):
        if "vertices" in doc:
            return "polyline"
        if "triples" in doc or "tail" in doc:
            return "sequence"
        if "segments" in doc:
            return "taut_path"
        if "alpha" in doc:
            return "satellite"
    raise InputError("cannot tell what kind of document this is (expected vertices, triples, segments or alpha)")
