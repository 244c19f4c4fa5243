"""JSON session files: one ring presentation and a set of named ideals.

    {"ring": {"p": 2, "vars": ["x", "y", "z"], "relations": ["x^3+y^3+z^3"]},
     "ideals": {"I": ["x", "y"]}}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

import jsonschema

from .ideals import Ideal, QuotientPresentation
from .poly import ParseError, parse_polynomial
from .ring import Ring

_IDENT = "^[A-Za-z][A-Za-z0-9_]*$"

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["ring", "ideals"],
    "properties": {
        "ring": {
            "type": "object",
            "additionalProperties": False,
            "required": ["p", "vars", "relations"],
            "properties": {
                "p": {"type": "integer"},
                "vars": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "string", "pattern": _IDENT},
                },
                "relations": {"type": "array", "items": {"type": "string"}},
            },
        },
        "ideals": {
            "type": "object",
            "propertyNames": {"pattern": _IDENT},
            "additionalProperties": {"type": "array", "items": {"type": "string"}},
        },
    },
}


class SessionError(ValueError):
    """Schema or validation problem in a session file."""


class SessionParseError(ValueError):
    """A polynomial in the session does not parse."""

    def __init__(self, where: str, src: str, cause: Exception):
        super().__init__(f"{where}: cannot parse {src!r}: {cause}")
        self.where = where
        self.src = src


@dataclass
class Session:
    presentation: QuotientPresentation
    ideals: dict[str, Ideal]

    def ideal(self, name: str) -> Ideal:
        try:
            return self.ideals[name]
        except KeyError:
            known = ", ".join(sorted(self.ideals)) or "none"
            raise SessionError(f"no ideal named {name!r} (known: {known})") from None

    def to_dict(self) -> dict:
        ring = self.presentation.ring
        return {
            "ring": {
                "p": ring.p,
                "vars": list(ring.variables),
                "relations": [str(r) for r in self.presentation.relations],
            },
            "ideals": {n: [str(g) for g in I.generators] for n, I in self.ideals.items()},
        }


def session_from_dict(data) -> Session:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise SessionError(f"session schema violation at {path}: {exc.message}") from None
    spec = data["ring"]
    try:
        ring = Ring(spec["p"], tuple(spec["vars"]))
    except ValueError as exc:
        raise SessionError(str(exc)) from None
    rels = []
    for src in spec["relations"]:
        rels.append(_parse(src, ring, "relations"))
    pres = QuotientPresentation(ring, rels)
    ideals = {}
    for name, gens in data["ideals"].items():
        ideals[name] = Ideal(pres, [_parse(src, ring, f"ideal {name}") for src in gens])
    return Session(pres, ideals)


def _parse(src: str, ring: Ring, where: str):
    try:
        return parse_polynomial(src, ring)
    except (ParseError, OverflowError) as exc:
        raise SessionParseError(where, src, exc) from None


def load_session(path) -> Session:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionError(f"{path}: invalid JSON: {exc}") from None
    return session_from_dict(data)


def parse_rational(text: str):
    if not re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", text):
        raise ValueError(f"not a rational number: {text!r}")
    return Fraction(text.replace(" ", ""))
