"""Versioned JSON session files.

Polynomials are stored as exact term lists (with the canonical text alongside
for readers), so loading never goes back through the parser.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import local_cohomology as lc
from .config import Config
from .errors import CCLError
from .groebner import Ideal
from .poly import Polynomial, RingSpec

VERSION = "charp-closure-lab-session/1"


class SessionError(CCLError, ValueError):
    pass


@dataclass
class SessionData:
    bindings: dict[str, tuple[str, Any]] = field(default_factory=dict)
    config: dict[str, Any] = field(default_factory=dict)
    current_ring: str | None = None


def _ring_to_json(R: RingSpec) -> dict:
    return {"prime": R.prime, "variables": list(R.variables),
            "defining_ideal": [_poly_to_json(g) for g in R.defining_ideal]}


def _ring_from_json(d: dict) -> RingSpec:
    ambient = RingSpec(int(d["prime"]), tuple(d["variables"]))
    gens = [_poly_from_json(ambient, g) for g in d["defining_ideal"]]
    return ambient.quotient(gens) if gens else ambient


def _poly_to_json(f: Polynomial) -> dict:
    return {"text": str(f), "terms": [[list(m), c] for m, c in f.sorted_terms()]}


def _poly_from_json(R: RingSpec, d: dict) -> Polynomial:
    return Polynomial(R.ambient, {tuple(m): c for m, c in d["terms"]})


def _value_to_json(kind: str, v: Any) -> dict:
    if kind == "ring":
        return _ring_to_json(v)
    if kind == "poly":
        return {"ring": _ring_to_json(v.ring), "poly": _poly_to_json(v)}
    if kind == "ideal":
        return {"ring": _ring_to_json(v.ring), "generators": [_poly_to_json(g) for g in v.generators],
                "text": str(v)}
    if kind == "family":
        return {"ideals": [_value_to_json("ideal", I) for I in v]}
    if kind == "sop":
        return {"ring": _ring_to_json(v.ring), "sop": [_poly_to_json(f) for f in v.sop],
                "regularity_checked": v.regularity_checked}
    if kind == "class":
        return {"sop": _value_to_json("sop", v.sop), "level": v.level,
                "representative": _poly_to_json(v.representative)}
    raise SessionError(f"cannot serialize a binding of kind {kind!r}")


def _value_from_json(kind: str, d: dict) -> Any:
    if kind == "ring":
        return _ring_from_json(d)
    if kind == "poly":
        return _poly_from_json(_ring_from_json(d["ring"]), d["poly"])
    if kind == "ideal":
        R = _ring_from_json(d["ring"])
        return Ideal(R, [_poly_from_json(R, g) for g in d["generators"]])
    if kind == "family":
        return [_value_from_json("ideal", I) for I in d["ideals"]]
    if kind == "sop":
        R = _ring_from_json(d["ring"])
        return lc.SopData(R, tuple(_poly_from_json(R, f) for f in d["sop"]),
                          bool(d["regularity_checked"]))
    if kind == "class":
        S = _value_from_json("sop", d["sop"])
        return lc.LocalCohomClass(_poly_from_json(S.ring, d["representative"]), int(d["level"]), S)
    raise SessionError(f"unknown binding kind {kind!r}")


def dumps(bindings: dict[str, Any], kinds: dict[str, str], cfg: Config,
          current_ring: str | None = None) -> str:
    doc = {
        "version": VERSION,
        "config": cfg.as_dict(),
        "current_ring": current_ring,
        "bindings": [{"name": name, "kind": kinds[name], "value": _value_to_json(kinds[name], value)}
                     for name, value in bindings.items()],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> SessionData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionError(f"session file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("version") != VERSION:
        raise SessionError(f"unsupported session version {doc.get('version') if isinstance(doc, dict) else None!r}")
    data = SessionData(config=dict(doc.get("config") or {}), current_ring=doc.get("current_ring"))
    for entry in doc.get("bindings", []):
        try:
            data.bindings[entry["name"]] = (entry["kind"], _value_from_json(entry["kind"], entry["value"]))
        except (KeyError, TypeError) as exc:
            raise SessionError(f"malformed binding {entry!r}: {exc}") from None
    return data


def save(path: Path, bindings: dict[str, Any], kinds: dict[str, str], cfg: Config,
         current_ring: str | None = None) -> None:
    Path(path).write_text(dumps(bindings, kinds, cfg, current_ring), encoding="utf-8")


def load(path: Path) -> SessionData:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SessionError(f"cannot read session file: {exc}") from None
    return loads(text)
