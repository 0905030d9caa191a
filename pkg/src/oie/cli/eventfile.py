"""Event files and OIE serialization.

An event file is UTF-8 JSON::

    {
      "format": 1,
      "events": [{"id": "a", "intervals": [[0, 1], ["21", "22"]]}],
      "constraints": [
        {"forbidden": {"a": [0, 1], "b": [0, 1]}},
        {"no_overlap": ["a", "b"]},
        {"min_gap": ["a", "b"], "gap": "1/2"}
      ],
      "expression": "add(a, b; alpha=0, beta=22)"
    }

Rationals are integers, ``"p/q"`` strings or decimal strings (``"9.4"`` is
exactly 47/5). An event with no intervals stands for the void OIE.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import InvalidInput
from ..feasibility import ConstraintSet, Forbidden, MinGap, NoOverlap
from ..model import (OIE, ComboSet, Interval, format_rational, make_atomic, to_rational,
                     void_oie)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class EventSpec:
    id: str
    intervals: tuple = ()

    def oie(self) -> OIE:
        if not self.intervals:
            return void_oie()
        return make_atomic(self.id, self.intervals)


@dataclass(frozen=True)
class EventFile:
    events: tuple
    constraints: ConstraintSet = field(default_factory=ConstraintSet)
    expression: str | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ids = [e.id for e in self.events]
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        if dupes:
            raise InvalidInput(f"duplicate event ids: {dupes}")
        self.constraints.check_ids(ids)

    @property
    def ids(self) -> tuple:
        return tuple(e.id for e in self.events)

    def oies(self) -> dict:
        return {e.id: e.oie() for e in self.events}


def _rational(value, where: str):
    try:
        return to_rational(value)
    except InvalidInput as exc:
        raise InvalidInput(f"{where}: {exc}") from None


def _interval(pair, where: str) -> Interval:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise InvalidInput(f"{where}: expected [start, end], got {pair!r}")
    return Interval(_rational(pair[0], where), _rational(pair[1], where))


def encode_rational(value):
    if value.denominator == 1:
        return value.numerator
    return format_rational(value)


def encode_interval(x: Interval) -> list:
    return [encode_rational(x.start), encode_rational(x.end)]


def parse_event_file(data) -> EventFile:
    if not isinstance(data, dict):
        raise InvalidInput("event file must be a JSON object")
    version = data.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise InvalidInput(f"unsupported event file format {version!r}")
    events = []
    for n, raw in enumerate(data.get("events", [])):
        where = f"events[{n}]"
        if not isinstance(raw, dict) or not isinstance(raw.get("id"), str) or not raw["id"]:
            raise InvalidInput(f"{where}: needs a non-empty string id")
        intervals = tuple(_interval(p, f"{where}.intervals") for p in raw.get("intervals", []))
        events.append(EventSpec(raw["id"], intervals))

    forbidden, rules = [], []
    for n, raw in enumerate(data.get("constraints", [])):
        where = f"constraints[{n}]"
        if not isinstance(raw, dict):
            raise InvalidInput(f"{where}: expected an object")
        if "forbidden" in raw:
            pattern = raw["forbidden"]
            if not isinstance(pattern, dict) or not pattern:
                raise InvalidInput(f"{where}: forbidden needs an id -> [start, end] object")
            forbidden.append(Forbidden(tuple((k, _interval(v, where)) for k, v in pattern.items())))
        elif "no_overlap" in raw:
            rules.append(NoOverlap(frozenset(raw["no_overlap"])))
        elif "min_gap" in raw:
            pair = raw["min_gap"]
            if not isinstance(pair, list) or len(pair) != 2:
                raise InvalidInput(f"{where}: min_gap needs two ids")
            rules.append(MinGap(pair[0], pair[1], _rational(raw.get("gap"), where)))
        else:
            raise InvalidInput(f"{where}: unknown constraint kind {sorted(raw)}")
    expression = data.get("expression")
    if expression is not None and not isinstance(expression, str):
        raise InvalidInput("expression must be a string")
    return EventFile(tuple(events), ConstraintSet(frozenset(forbidden), tuple(rules)), expression,
                     dict(data.get("meta", {})))


def load_event_file(path) -> EventFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from None
    return parse_event_file(data)


def dump_event_file(ef: EventFile) -> dict:
    constraints = []
    for f in sorted(ef.constraints.forbidden, key=lambda f: f.assignment):
        constraints.append({"forbidden": {k: encode_interval(v) for k, v in f.assignment}})
    for rule in ef.constraints.rules:
        if isinstance(rule, NoOverlap):
            constraints.append({"no_overlap": sorted(rule.ids)})
        else:
            constraints.append({"min_gap": [rule.first, rule.second], "gap": encode_rational(rule.gap)})
    out = {"format": FORMAT_VERSION,
           "events": [{"id": e.id, "intervals": [encode_interval(x) for x in sorted(e.intervals)]}
                      for e in ef.events]}
    if constraints:
        out["constraints"] = constraints
    if ef.expression is not None:
        out["expression"] = ef.expression
    if ef.meta:
        out["meta"] = ef.meta
    return out


def event_file_json(ef: EventFile) -> str:
    return json.dumps(dump_event_file(ef), indent=2, sort_keys=False) + "\n"


# -- OIE values ---------------------------------------------------------------

def oie_to_dict(o: OIE) -> dict:
    return {
        "components": [oie_to_dict(c) for c in o.components],
        "F": [[encode_interval(x) for x in combo] for combo in o.details],
        "I": [encode_interval(x) for x in sorted(o.intervals)],
        "A": sorted(o.atoms),
    }


def oie_from_dict(data) -> OIE:
    if not isinstance(data, dict):
        raise InvalidInput("OIE must be a JSON object")
    components = tuple(oie_from_dict(c) for c in data.get("components", []))
    details = ComboSet(tuple(_interval(p, "F") for p in combo) for combo in data.get("F", []))
    intervals = frozenset(_interval(p, "I") for p in data.get("I", []))
    return OIE(components, details, intervals, frozenset(data.get("A", [])))


def oie_json(o: OIE) -> str:
    return json.dumps({"format": FORMAT_VERSION, "oie": oie_to_dict(o)}, indent=2) + "\n"


def oie_from_json(text: str) -> OIE:
    data = json.loads(text)
    if data.get("format") != FORMAT_VERSION:
        raise InvalidInput(f"unsupported OIE format {data.get('format')!r}")
    return oie_from_dict(data["oie"])


def format_combo(combo) -> str:
    return "(" + ", ".join(repr(x) for x in combo) + ")"


def format_oie(o: OIE, indent: str = "") -> str:
    """Human-readable, deterministic rendering of an OIE."""
    if o.is_void:
        return f"{indent}VOID\n"
    lines = [f"{indent}C: (" + ", ".join(c.label for c in o.components) + ")"]
    lines.append(f"{indent}F ({len(o.details)}):")
    lines.extend(f"{indent}  {format_combo(c)}" for c in o.details)
    lines.append(f"{indent}I ({len(o.intervals)}): {{" + ", ".join(repr(x) for x in sorted(o.intervals)) + "}")
    lines.append(f"{indent}A: {{" + ", ".join(sorted(o.atoms)) + "}")
    return "\n".join(lines) + "\n"
