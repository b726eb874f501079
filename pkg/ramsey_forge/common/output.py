"""
Deterministic rendering of command results
"""
import json
from fractions import Fraction
from typing import Any, Dict, List


def _default(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    return str(value)


def render_json(payload: Dict[str, Any]) -> str:
    """Sorted keys, fixed separators; nothing time-dependent belongs in payload"""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=_default)


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, ensure_ascii=False, default=_default)
    return str(value)


def render_table(payload: Dict[str, Any]) -> str:
    """Scalars as a field/value table; a list of row dicts under "rows" as columns"""
    lines: List[str] = []
    rows = payload.get("rows")
    width = max((len(k) for k in payload), default=0)
    for key in sorted(payload):
        if key == "rows":
            continue
        lines.append(f"{key.ljust(width)}  {_cell(payload[key])}")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        headers = list(rows[0].keys())
        cells = [[_cell(r.get(h)) for h in headers] for r in rows]
        widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
        if lines:
            lines.append("")
        lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for c in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(lines)


def render(payload: Dict[str, Any], mode: str) -> str:
    return render_table(payload) if mode == "table" else render_json(payload)
