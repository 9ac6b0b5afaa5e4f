"""Deterministic report rendering: aligned table, CSV, or key-sorted JSON.

Every report is a dict with ``command``, ``config``, ``summary`` and
``rows``; ``columns`` fixes the CSV/table column order for the command.
Nothing time- or host-dependent is ever written, so identical configs give
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json

SCHEMA_VERSION = 1
FORMATS = ("table", "csv", "structured")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    return str(v)


def _header_lines(report: dict) -> list[str]:
    lines = [f"# {report['command']} (schema {SCHEMA_VERSION})"]
    for k, v in sorted(report["config"].items()):
        lines.append(f"# config.{k}: {_cell(v)}")
    return lines


def _summary_lines(report: dict) -> list[str]:
    out = []
    for k, v in sorted(report["summary"].items()):
        if isinstance(v, dict) or (isinstance(v, list) and not all(isinstance(x, (int, str)) for x in v)):
            v = json.dumps(v, sort_keys=True)
        elif isinstance(v, list) and any(isinstance(x, str) and " " in x for x in v):
            v = "; ".join(v)
        out.append(f"# {k}: {_cell(v)}")
    return out


def render(report: dict, fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "structured":
        doc = dict(report)
        doc["schema_version"] = SCHEMA_VERSION
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    columns = report["columns"]
    rows = [[_cell(r.get(c)) for c in columns] for r in report["rows"]]
    if fmt == "csv":
        buf = io.StringIO()
        for line in _header_lines(report) + _summary_lines(report):
            buf.write(line + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(columns)]
    out = _header_lines(report)
    if columns:
        out.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        out.append("  ".join("-" * w for w in widths))
        out.extend("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows)
    out.extend(_summary_lines(report))
    return "\n".join(out) + "\n"
