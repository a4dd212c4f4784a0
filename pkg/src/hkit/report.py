"""Result rows and serialization for verification runs.

A run produces one CheckReport per identity checked.  Rows are sorted by
(suite, relation) so that two runs with the same configuration serialize
byte-identically apart from the timestamp, which lives in its own field
precisely so consumers can strip it before comparing.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

MODE_EXACT = "exact"
MODE_NUMERIC = "numeric"


@dataclass(frozen=True)
class CheckReport:
    """One verified identity: where it lives, how it was checked, what happened.

    `residual` is 0.0 for exact passes, the worst numeric deviation for
    numeric checks, and None for audit rows that itemize a comparison
    rather than bound an error.
    """
    suite: str
    relation: str
    anchor: str
    mode: str
    residual: float | None
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class RunReport:
    version: str
    timestamp: str
    config: dict
    rows: tuple[CheckReport, ...]
    summary: dict


def build_report(rows, config_echo: dict, version: str,
                 timestamp: str | None = None) -> RunReport:
    """Sort rows canonically and attach counts and the configuration echo."""
    ordered = tuple(sorted(rows, key=lambda r: (r.suite, r.relation)))
    summary = {
        "total": len(ordered),
        "passed": sum(1 for r in ordered if r.passed),
        "failed": sum(1 for r in ordered if not r.passed),
        "exact": sum(1 for r in ordered if r.mode == MODE_EXACT),
        "numeric": sum(1 for r in ordered if r.mode == MODE_NUMERIC),
    }
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat()
    return RunReport(version=version, timestamp=timestamp,
                     config=config_echo, rows=ordered, summary=summary)


def exit_code(report: RunReport) -> int:
    """0 when every check passed, 1 otherwise."""
    return 0 if report.summary["failed"] == 0 else 1


def to_json(report: RunReport) -> str:
    doc = {
        "version": report.version,
        "timestamp": report.timestamp,
        "config": report.config,
        "summary": report.summary,
        "rows": [asdict(r) for r in report.rows],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# Columns follow the alphabetical key order JSON serialization uses.
CSV_COLUMNS = ("anchor", "detail", "mode", "passed", "relation", "residual", "suite")


def to_csv(report: RunReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.rows:
        d = asdict(r)
        writer.writerow([
            "" if d[c] is None else (str(d[c]).lower() if c == "passed" else str(d[c]))
            for c in CSV_COLUMNS
        ])
    return buf.getvalue()


def to_text(report: RunReport) -> str:
    lines = []
    for r in report.rows:
        mark = "PASS" if r.passed else "FAIL"
        res = "" if r.residual is None else f" residual={r.residual:.3e}"
        lines.append(f"{mark} {r.mode:<7} {r.suite}/{r.relation}:"
                     f" {r.anchor}{res}")
        if r.detail:
            lines.append(f"     {r.detail}")
    s = report.summary
    lines.append(f"{s['passed']}/{s['total']} checks passed"
                 f" ({s['exact']} exact, {s['numeric']} numeric)")
    return "\n".join(lines) + "\n"


def emit_report(report: RunReport, format: str = "json") -> str:
    """Serialize in one of the three stable formats."""
    if format == "json":
        return to_json(report)
    if format == "csv":
        return to_csv(report)
    if format == "text":
        return to_text(report)
    raise ValueError(f"unknown format {format!r}")
