"""JSON input loading and exact JSON output."""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .numeric import format_rational


def load_json(path: str | Path):
    """Read a JSON document. OSError propagates; malformed JSON is a ParseError."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _reject_float(text: str):
    raise ParseError(f"decimal number {text} not allowed; write rationals as strings like \"3/2\"")


def to_jsonable(obj):
    """Rationals become canonical strings; containers and dataclasses recurse."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, int):
        return obj
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if hasattr(obj, "_asdict"):
        return {k: to_jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False)
