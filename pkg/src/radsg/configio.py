"""JSON file formats for rings, configurations and ideal queries.

Configuration file::

    {"ring": {"vars": ["x", "y"], "weights": [1, 1], "field": "QQ"},
     "quotient": ["x*y - ..."],          # optional
     "kind": "basic" | "general",
     "z": "x",                            # general only
     "forms": ["x", "y", "x + y"],
     "degree_bound": 1,
     "name": "...", "annotations": {...}} # optional

Ideal query file::

    {"ring": {...}, "quotient": [...],
     "generators": ["..."], "targets": ["..."],
     "eliminate": ["x"], "order": "grevlex",
     "P": "...", "Q": "...", "z_part": ["y"]}  # optional, per command

Polynomials are written in the library grammar; every output polynomial
parses back to the same value.
"""

from __future__ import annotations

import hashlib
import json

from .ideal import QuotientContext
from .poly import Ring
from .scalar import Field
from .sg import SGConfig

__all__ = [
    "ring_from_dict",
    "ring_to_dict",
    "config_from_dict",
    "config_to_dict",
    "load_json",
    "dump_json",
    "content_hash",
    "QueryFile",
]


class ConfigError(ValueError):
    pass


def ring_from_dict(d) -> Ring:
    try:
        names = list(d["vars"])
    except (KeyError, TypeError):
        raise ConfigError("ring needs a 'vars' list") from None
    weights = d.get("weights")
    field = Field.from_text(d.get("field", "QQ"))
    return Ring(names, weights, field)


def ring_to_dict(ring: Ring) -> dict:
    out = {"vars": list(ring.vars)}
    if any(w != 1 for w in ring.weights):
        out["weights"] = list(ring.weights)
    out["field"] = ring.field.describe()
    return out


def _parse_all(ring, items, what):
    out = []
    for k, t in enumerate(items or []):
        try:
            out.append(ring.parse(t))
        except ValueError as exc:
            raise ConfigError(f"{what}[{k}]: {exc}") from None
    return out


def config_from_dict(d) -> SGConfig:
    if "ring" not in d:
        raise ConfigError("configuration needs a 'ring'")
    ring = ring_from_dict(d["ring"])
    amb = QuotientContext(ring, _parse_all(ring, d.get("quotient"), "quotient"))
    kind = d.get("kind", "basic")
    forms = _parse_all(ring, d.get("forms"), "forms")
    z = ring.parse(d["z"]) if d.get("z") else None
    if "degree_bound" in d:
        bound = int(d["degree_bound"])
    else:
        bound = max((f.degree() for f in forms), default=1)
        bound = max(int(bound), 1)
    try:
        return SGConfig(amb, kind, forms, bound, z=z, name=d.get("name", ""),
                        annotations=dict(d.get("annotations", {})))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def config_to_dict(config: SGConfig) -> dict:
    out = {"name": config.name, "ring": ring_to_dict(config.ring)}
    if config.ambient.relations:
        out["quotient"] = [str(r) for r in config.ambient.relations]
    out["kind"] = config.kind
    if config.z is not None:
        out["z"] = str(config.z)
    out["forms"] = [str(f) for f in config.forms]
    out["degree_bound"] = int(config.degree_bound)
    if config.annotations:
        out["annotations"] = dict(config.annotations)
    return out


def load_json(path_or_text, stdin=None):
    """Read JSON from a path, or from ``stdin`` when the path is '-'."""
    if path_or_text == "-":
        import sys

        text = (stdin or sys.stdin).read()
    else:
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


class QueryFile:
    """Parsed ideal query: ring, ambient, generators and targets."""

    def __init__(self, d):
        if "ring" not in d:
            raise ConfigError("query needs a 'ring'")
        self.raw = d
        self.ring = ring_from_dict(d["ring"])
        self.ambient = QuotientContext(self.ring, _parse_all(self.ring, d.get("quotient"), "quotient"))
        self.generators = _parse_all(self.ring, d.get("generators"), "generators")
        self.targets = _parse_all(self.ring, d.get("targets"), "targets")
        self.eliminate = list(d.get("eliminate", []))
        self.order = d.get("order", "grevlex")
        for name in ("P", "Q"):
            setattr(self, name, self.ring.parse(d[name]) if d.get(name) else None)
        self.z_part = list(d.get("z_part", []))
        self.search_degree = int(d.get("search_degree", 2))
