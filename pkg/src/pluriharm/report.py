"""Deterministic JSON and text rendering of reports.

Floats are written with 17 significant digits; key order is the insertion
order of the report dictionaries, which the builders fix.
"""

import math

import numpy as np


def _scalar(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return f'"{x}"'
        return format(x, ".17g")
    if isinstance(x, str):
        return _string(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _string(s):
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ch == "\n":
            out.append("\\n")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def dumps(obj, indent=2, _level=0) -> str:
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_string(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{_scalar(obj.real)}, {_scalar(obj.imag)}]"
    return _scalar(obj)


def point_json(z):
    return [[float(c.real), float(c.imag)] for c in np.asarray(z, dtype=complex)]


def render_text(report: dict) -> str:
    lines = []
    cfg = report.get("config", {})
    lines.append(f"command: {cfg.get('command', '?')}")
    summary = report.get("summary", {})
    for check in summary.get("checks", []):
        lines.append(f"  [{check['status'].upper()}] {check['id']}: {check['description']}")
    maxima = summary.get("max_residuals", {})
    if maxima:
        lines.append("max residuals:")
        lines.extend(f"  {k}: {format(float(v), '.6e')}" for k, v in maxima.items())
    verdicts = summary.get("verdicts", {})
    if verdicts:
        lines.append("verdicts:")
        lines.extend(f"  {k}: {'yes' if v else 'no'}" for k, v in verdicts.items())
    return "\n".join(lines) + "\n"
