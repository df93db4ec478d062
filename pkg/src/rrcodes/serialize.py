"""JSON codecs for contexts, ring elements and specs."""

from __future__ import annotations

import json
from typing import Any

from .codes import CodeSpec
from .errors import InvalidInput
from .gf import FieldCtx, FieldElem, field_new
from .quotient import QuotientCtx, make_context
from .ring_r import RElem

SCHEMA = "1"


def loads(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{what} is not valid JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def field_from_json(d: Any) -> FieldCtx:
    if not isinstance(d, dict) or "p" not in d:
        raise InvalidInput('field JSON needs at least {"p": ...}')
    try:
        return field_new(int(d["p"]), int(d.get("m", 1)), d.get("modulus"))
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad field JSON: {exc}") from exc


def elem_from_json(F: FieldCtx, v: Any) -> FieldElem:
    """An int (embedded prime-field value) or a coordinate list."""
    if isinstance(v, bool) or not isinstance(v, (int, list)):
        raise InvalidInput(f"field element must be an int or a list, got {v!r}")
    return F.elem(v)


def relem_from_json(F: FieldCtx, d: Any) -> RElem:
    if isinstance(d, list) and len(d) == 4:
        parts = d
    elif isinstance(d, dict):
        unknown = set(d) - {"a1", "a2", "a3", "a4"}
        if unknown:
            raise InvalidInput(f"unknown ring element keys {sorted(unknown)}")
        parts = [d.get(k, 0) for k in ("a1", "a2", "a3", "a4")]
    else:
        raise InvalidInput("ring element JSON must be an object a1..a4 or a 4-list")
    return RElem(*(elem_from_json(F, v) for v in parts))


def ctx_from_parts(field_json: str, s: int, alpha_json: str) -> QuotientCtx:
    F = field_from_json(loads(field_json, "--field-json"))
    alpha = relem_from_json(F, loads(alpha_json, "--alpha-json"))
    if s < 0:
        raise InvalidInput("s must be nonnegative")
    return make_context(F, s, alpha)


def ctx_from_json(d: Any) -> QuotientCtx:
    if not isinstance(d, dict) or not {"field", "s", "alpha"} <= set(d):
        raise InvalidInput('context JSON needs "field", "s" and "alpha"')
    F = field_from_json(d["field"])
    return make_context(F, int(d["s"]), relem_from_json(F, d["alpha"]))


def spec_from_json(ctx: QuotientCtx, text: str) -> CodeSpec:
    d = loads(text, "--spec-json")
    if not isinstance(d, dict):
        raise InvalidInput("spec JSON must be an object")
    return CodeSpec.from_json(ctx, d)


def ctx_summary(ctx: QuotientCtx) -> dict:
    return {**ctx.to_json(), "case": ctx.case}
