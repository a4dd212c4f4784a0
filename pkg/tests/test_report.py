"""Report assembly and serialization: ordering, counts, and stable output."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import pytest

from hkit.report import (
    CSV_COLUMNS,
    CheckReport,
    MODE_EXACT,
    MODE_NUMERIC,
    build_report,
    emit_report,
    exit_code,
    to_csv,
    to_json,
    to_text,
)

ROWS = [
    CheckReport("gauge", "orthogonality", "A.A = f(r) delta", MODE_EXACT, 0.0, True),
    CheckReport("charge", "total", "q = 1", MODE_NUMERIC, 2.5e-13, True,
                "nodes (16, 16, 8, 8)"),
    CheckReport("charge", "audit", "table comparison", MODE_EXACT, None, True),
    CheckReport("algebra", "pi-pi", "[pi,pi] = i hbar F", MODE_EXACT, None, False,
                "3 terms survive"),
]

CONFIG = {"seed": 1, "suites": ["charge"]}


def _report():
    return build_report(ROWS, CONFIG, "0.1.0", timestamp="2024-01-01T00:00:00+00:00")


def test_rows_sorted_and_counted():
    rep = _report()
    assert [(r.suite, r.relation) for r in rep.rows] == [
        ("algebra", "pi-pi"), ("charge", "audit"), ("charge", "total"),
        ("gauge", "orthogonality")]
    assert rep.summary == {"total": 4, "passed": 3, "failed": 1,
                           "exact": 3, "numeric": 1}
    assert rep.version == "0.1.0"


def test_exit_code():
    assert exit_code(_report()) == 1
    good = build_report(ROWS[:3], CONFIG, "0.1.0")
    assert exit_code(good) == 0


def test_json_round_trip():
    text = to_json(_report())
    assert text.endswith("\n")
    doc = json.loads(text)
    assert doc["config"] == CONFIG
    assert doc["summary"]["failed"] == 1
    assert len(doc["rows"]) == 4
    assert doc["rows"][1]["residual"] is None
    assert doc["rows"][2]["residual"] == 2.5e-13
    # keys come out sorted so serialization is canonical
    assert text == json.dumps(doc, sort_keys=True, indent=2) + "\n"
    assert sorted(doc["rows"][0]) == sorted(CSV_COLUMNS)


def test_csv_shape():
    text = to_csv(_report())
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == list(CSV_COLUMNS)
    assert len(rows) == 5
    by_rel = {r[rows[0].index("relation")]: r for r in rows[1:]}
    residual_col = rows[0].index("residual")
    passed_col = rows[0].index("passed")
    assert by_rel["audit"][residual_col] == ""
    assert by_rel["total"][residual_col] == "2.5e-13"
    assert by_rel["pi-pi"][passed_col] == "false"
    assert by_rel["total"][passed_col] == "true"


def test_text_format():
    text = to_text(_report())
    lines = text.splitlines()
    assert lines[0].startswith("FAIL exact   algebra/pi-pi")
    assert "     3 terms survive" in lines
    assert any(line.startswith("PASS numeric charge/total") and
               "residual=2.500e-13" in line for line in lines)
    assert lines[-1] == "3/4 checks passed (3 exact, 1 numeric)"


def test_determinism():
    a = build_report(ROWS, CONFIG, "0.1.0")
    b = build_report(list(reversed(ROWS)), CONFIG, "0.1.0")
    strip = lambda rep: [l for l in to_json(rep).splitlines()
                         if '"timestamp"' not in l]
    assert strip(a) == strip(b)


def test_emit_dispatch():
    rep = _report()
    assert emit_report(rep, "json") == to_json(rep)
    assert emit_report(rep, "csv") == to_csv(rep)
    assert emit_report(rep, "text") == to_text(rep)
    with pytest.raises(ValueError):
        emit_report(rep, "yaml")


def test_timestamp_default_is_utc_iso():
    rep = build_report([], CONFIG, "0.1.0")
    assert rep.timestamp.endswith("+00:00")
    assert rep.summary == {"total": 0, "passed": 0, "failed": 0,
                           "exact": 0, "numeric": 0}


def test_emitted_json_matches_published_schema():
    jsonschema = pytest.importorskip("jsonschema")
    from hkit.config import SuiteConfig, config_echo

    schema_path = Path(__file__).resolve().parents[1] / "docs" / "report.schema.json"
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft7Validator.check_schema(schema)
    rep = build_report(ROWS, config_echo(SuiteConfig()), "0.1.0")
    jsonschema.validate(json.loads(to_json(rep)), schema)
