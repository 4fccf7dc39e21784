import io
import json
import math

from cyclebalance.report import (CSV_COLUMNS, AnalysisReport, ReportRow,
                                 emit_report, parse_json_report)


def _report(rows):
    return AnalysisReport("demo", 3, 6, 1 / 3, "exact", tuple(rows),
                          config={"max_length": 3}, wall_time_s=0.01)


def test_csv_columns_exact():
    sink = io.StringIO()
    emit_report(_report([]), "csv", sink)
    assert sink.getvalue() == ",".join(CSV_COLUMNS) + "\n"


def test_csv_undefined_cells_empty_and_inf():
    rows = [
        ReportRow(1),
        ReportRow(3, 0, 2, 1.0, math.inf, -1.0),
    ]
    sink = io.StringIO()
    emit_report(_report(rows), "csv", sink)
    lines = sink.getvalue().splitlines()
    assert lines[1] == "1,,,,,,,,,"
    assert lines[2] == "3,0,2,1,inf,-1,,,,"


def test_csv_six_significant_digits():
    rows = [ReportRow(4, 1000, 1, 1 / 3, 2 / 3, 0.123456789)]
    sink = io.StringIO()
    emit_report(_report(rows), "csv", sink)
    cells = sink.getvalue().splitlines()[1].split(",")
    assert cells[3] == "0.333333"
    assert cells[5] == "0.123457"


def test_json_round_trip_byte_identical():
    rows = [ReportRow(2, 3, 0, 0.0, 0.0, 1.0),
            ReportRow(3, 0, 2, 1.0, math.inf, -1.0, None, 0.444, 0.1, 0.9)]
    sink = io.StringIO()
    emit_report(_report(rows), "json", sink)
    text = sink.getvalue()
    payload = parse_json_report(text)
    assert payload["schema_version"] == 1
    assert payload["rows"][1]["U"] == "inf"
    again = json.dumps(payload, indent=2, sort_keys=False, allow_nan=False) + "\n"
    assert again == text


def test_timing_excluded_by_default():
    sink = io.StringIO()
    emit_report(_report([]), "json", sink)
    assert "wall_time" not in sink.getvalue()
    sink = io.StringIO()
    emit_report(_report([]), "json", sink, include_timing=True)
    assert "wall_time_s" in sink.getvalue()


def test_emission_deterministic():
    rows = [ReportRow(2, 3, 0, 0.0, 0.0, 1.0)]
    a, b = io.StringIO(), io.StringIO()
    emit_report(_report(rows), "json", a)
    emit_report(_report(rows), "json", b)
    assert a.getvalue() == b.getvalue()
