"""Deterministic report rendering: aligned text, CSV, or structured JSON.

Commands build a Report with display-ready string cells plus a structured
payload; rendering never consults the clock, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

TEXT = "text"
CSV = "csv"
STRUCTURED = "structured"
FORMATS = (TEXT, CSV, STRUCTURED)


@dataclass
class Table:
    headers: list[str]
    rows: list[list[str]]
    title: str = ""


@dataclass
class Report:
    title: str
    tables: list[Table] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)


def _render_text(report: Report) -> str:
    out: list[str] = [report.title, "=" * len(report.title)]
    for table in report.tables:
        out.append("")
        if table.title:
            out.append(table.title)
        widths = [len(h) for h in table.headers]
        for row in table.rows:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        def line(cells: list[str]) -> str:
            padded = [
                cells[0].ljust(widths[0]),
                *(cells[i].rjust(widths[i]) for i in range(1, len(cells))),
            ]
            return "  ".join(padded).rstrip()
        out.append(line(table.headers))
        out.append(line(["-" * w for w in widths]))
        out.extend(line(row) for row in table.rows)
    if report.notes:
        out.append("")
        out.extend(f"note: {n}" for n in report.notes)
    return "\n".join(out) + "\n"


def _render_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for i, table in enumerate(report.tables):
        if i:
            buf.write("\n")
        if table.title:
            buf.write(f"# {table.title}\n")
        writer.writerow(table.headers)
        writer.writerows(table.rows)
    for n in report.notes:
        buf.write(f"# note: {n}\n")
    return buf.getvalue()


def render(report: Report, fmt: str) -> str:
    if fmt == TEXT:
        return _render_text(report)
    if fmt == CSV:
        return _render_csv(report)
    if fmt == STRUCTURED:
        return json.dumps(report.data, indent=2) + "\n"
    raise ValueError(f"unknown output format {fmt!r} (expected one of {', '.join(FORMATS)})")
