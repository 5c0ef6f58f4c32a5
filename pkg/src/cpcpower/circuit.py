"""JSON circuit description: source spectrum, load tree, optional compensation.

Example::

    {
      "omega": 1.0,
      "source": {"dc": 0.0, "harmonics": [{"n": 1, "a": 10.0}, {"n": 5, "a": 5.0}]},
      "load": {"series": [{"R": 1.0}, {"L": 2.0}]},
      "compensation": "full"
    }

Leaves are ``{"R": x}``, ``{"L": x}`` or ``{"C": x}``; ``{"series": [...]}``
and ``{"parallel": [...]}`` nest. A tabulated load is written as
``{"admittance_table": [{"n": 0, "g": 1.0, "b": 0.0}, ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import jsonschema

from cpcpower.errors import CPCError
from cpcpower.netlist import (
    AdmittanceTable,
    Capacitor,
    Inductor,
    Network,
    Parallel,
    Resistor,
    Series,
)
from cpcpower.spectrum import HarmonicSignal

STRATEGIES = ("budeanu", "iliovici", "full")

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["omega", "source", "load"],
    "additionalProperties": False,
    "properties": {
        "omega": _POSITIVE,
        "source": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "dc": {"type": "number"},
                "harmonics": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["n"],
                        "additionalProperties": False,
                        "properties": {
                            "n": {"type": "integer", "minimum": 1},
                            "a": {"type": "number"},
                            "b": {"type": "number"},
                        },
                    },
                },
            },
        },
        "load": {"$ref": "#/$defs/node"},
        "compensation": {"enum": list(STRATEGIES)},
    },
    "$defs": {
        "node": {
            "oneOf": [
                {"type": "object", "required": ["R"], "additionalProperties": False,
                 "properties": {"R": _POSITIVE}},
                {"type": "object", "required": ["L"], "additionalProperties": False,
                 "properties": {"L": _POSITIVE}},
                {"type": "object", "required": ["C"], "additionalProperties": False,
                 "properties": {"C": _POSITIVE}},
                {"type": "object", "required": ["series"], "additionalProperties": False,
                 "properties": {"series": {"type": "array", "minItems": 1,
                                           "items": {"$ref": "#/$defs/node"}}}},
                {"type": "object", "required": ["parallel"], "additionalProperties": False,
                 "properties": {"parallel": {"type": "array",
                                             "items": {"$ref": "#/$defs/node"}}}},
                {"type": "object", "required": ["admittance_table"], "additionalProperties": False,
                 "properties": {"admittance_table": {
                     "type": "array",
                     "items": {"type": "object", "required": ["n", "g"],
                               "additionalProperties": False,
                               "properties": {"n": {"type": "integer", "minimum": 0},
                                              "g": {"type": "number"},
                                              "b": {"type": "number"}}}}}},
            ]
        }
    },
}


class CircuitFileError(CPCError, ValueError):
    """Circuit file is unreadable, malformed or fails validation."""


@dataclass(frozen=True)
class Circuit:
    source: HarmonicSignal
    load: Network
    compensation: Optional[str] = None

    @property
    def omega(self) -> float:
        return self.source.omega


def _unique(orders, what):
    if len(set(orders)) != len(orders):
        raise CircuitFileError(f"duplicate harmonic orders in {what}")


def _parse_node(node: dict) -> Network:
    if "R" in node:
        return Resistor(node["R"])
    if "L" in node:
        return Inductor(node["L"])
    if "C" in node:
        return Capacitor(node["C"])
    if "series" in node:
        return Series(tuple(_parse_node(c) for c in node["series"]))
    if "parallel" in node:
        return Parallel(tuple(_parse_node(c) for c in node["parallel"]))
    rows = node["admittance_table"]
    _unique([r["n"] for r in rows], "admittance_table")
    return AdmittanceTable({r["n"]: complex(r["g"], r.get("b", 0.0)) for r in rows})


def parse_circuit(data: dict) -> Circuit:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise CircuitFileError(f"invalid circuit file at {where}: {exc.message}") from None
    src = data["source"]
    harmonics = src.get("harmonics", [])
    _unique([h["n"] for h in harmonics], "source")
    try:
        u = HarmonicSignal(
            data["omega"],
            src.get("dc", 0.0),
            {h["n"]: (h.get("a", 0.0), h.get("b", 0.0)) for h in harmonics},
        )
        load = _parse_node(data["load"])
    except ValueError as exc:
        raise CircuitFileError(str(exc)) from None
    return Circuit(u, load, data.get("compensation"))


def load_circuit(path) -> Circuit:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CircuitFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitFileError(f"{path}: malformed JSON: {exc}") from None
    return parse_circuit(data)


def network_to_dict(net: Network) -> dict:
    if isinstance(net, Resistor):
        return {"R": net.R}
    if isinstance(net, Inductor):
        return {"L": net.L}
    if isinstance(net, Capacitor):
        return {"C": net.C}
    if isinstance(net, Series):
        return {"series": [network_to_dict(c) for c in net.children]}
    if isinstance(net, Parallel):
        return {"parallel": [network_to_dict(c) for c in net.children]}
    if isinstance(net, AdmittanceTable):
        return {"admittance_table": [{"n": n, "g": y.real, "b": y.imag} for n, y in net.values.items()]}
    raise TypeError(f"not a network: {net!r}")


def circuit_to_dict(circuit: Circuit) -> dict:
    u = circuit.source
    out = {
        "omega": u.omega,
        "source": {
            "dc": u.dc,
            "harmonics": [{"n": n, "a": a, "b": b} for n, (a, b) in u.terms.items()],
        },
        "load": network_to_dict(circuit.load),
    }
    if circuit.compensation:
        out["compensation"] = circuit.compensation
    return out
