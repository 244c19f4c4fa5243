"""Report assembly and human / JSON / CSV emission.

Output is a pure function of the report, so identical inputs give
byte-identical files.  Exact rationals are never printed as floats.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .graded import NEG_INF

FORMATS = ("human", "json", "csv")


@dataclass
class SummaryItem:
    key: str
    value: object
    qualifier: str = ""


@dataclass
class Report:
    command: str
    inputs: dict
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    summary: list[SummaryItem] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def add(self, key, value, qualifier: str = "") -> None:
        self.summary.append(SummaryItem(key, value, qualifier))


def _text(value) -> str:
    if value is None:
        return ""
    if value is NEG_INF:
        return "-inf"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return " ".join(_text(v) for v in value)
    return str(value)


def _jsonable(value):
    if value is NEG_INF:
        return "-inf"
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def render_json(report: Report) -> str:
    obj = {
        "command": report.command,
        "inputs": _jsonable(report.inputs),
        "columns": list(report.columns),
        "rows": [{c: _jsonable(r.get(c)) for c in report.columns} for r in report.rows],
        "summary": {
            s.key: {"value": _jsonable(s.value), "qualifier": s.qualifier} for s in report.summary
        },
        "warnings": list(report.warnings),
    }
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(report.columns)
    for r in report.rows:
        w.writerow([_text(r.get(c)) for c in report.columns])
    for s in report.summary:
        line = f"{s.key}={_text(s.value)}"
        w.writerow([line, s.qualifier] if s.qualifier else [line])
    for msg in report.warnings:
        w.writerow([f"warning={msg}"])
    return buf.getvalue()


def _use_color(stream) -> bool:
    if "NO_COLOR" in os.environ:
        return False
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())


def render_human(report: Report, color: bool = False) -> str:
    bold = ("\033[1m", "\033[0m") if color else ("", "")
    lines = [f"{bold[0]}{report.command}{bold[1]}"]
    for k, v in report.inputs.items():
        lines.append(f"  {k}: {_text(v)}")
    if report.columns and (report.rows or not report.summary):
        cells = [[_text(r.get(c)) for c in report.columns] for r in report.rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(report.columns)]
        lines.append("")
        header = "  ".join(c.rjust(w) for c, w in zip(report.columns, widths))
        lines.append(f"{bold[0]}{header}{bold[1]}")
        for row in cells:
            lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    if report.summary:
        lines.append("")
        width = max(len(s.key) for s in report.summary)
        for s in report.summary:
            tail = f"  ({s.qualifier})" if s.qualifier else ""
            lines.append(f"{s.key.ljust(width)}  {_text(s.value)}{tail}")
    for msg in report.warnings:
        lines.append(f"warning: {msg}")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str, color: bool = False) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    if fmt == "human":
        return render_human(report, color)
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report: Report, fmt: str = "human", destination=None) -> None:
    """Write to a stream, a path, or stdout when ``destination`` is None."""
    if destination is None or hasattr(destination, "write"):
        stream = destination if destination is not None else sys.stdout
        stream.write(render(report, fmt, fmt == "human" and _use_color(stream)))
        stream.flush()
        return
    with open(destination, "w", encoding="utf-8", newline="") as fh:
        fh.write(render(report, fmt))
