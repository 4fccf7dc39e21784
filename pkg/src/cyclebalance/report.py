"""Report assembly and bit-stable CSV/JSON emission.

Every numeric cell is rounded to 6 significant digits at build time, so a
parse -> re-emit round trip is byte-identical.  Undefined quantities stay
None and serialize as empty CSV cells / JSON nulls, never as zeros.  An
infinite negative-to-positive ratio prints as "inf".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"

CSV_COLUMNS = ("length", "n_pos", "n_neg", "R", "U", "K", "stderr_R",
               "null_R", "null_lo", "null_hi")

__all__ = ["AnalysisReport", "ReportRow", "emit_report", "parse_json_report",
           "CSV_COLUMNS"]


def _round6(x) -> float | None:
    if x is None:
        return None
    if isinstance(x, Fraction):
        x = float(x)
    if math.isinf(x):
        return math.inf
    return float(f"{float(x):.6g}")


@dataclass(frozen=True)
class ReportRow:
    length: int
    n_pos: int | None = None
    n_neg: int | None = None
    ratio: float | None = None        # R
    neg_to_pos: float | None = None   # U
    clustering: float | None = None   # K
    stderr: float | None = None
    null_ratio: float | None = None
    null_lo: float | None = None
    null_hi: float | None = None

    def rounded(self) -> "ReportRow":
        return ReportRow(
            self.length, self.n_pos, self.n_neg,
            _round6(self.ratio), _round6(self.neg_to_pos),
            _round6(self.clustering), _round6(self.stderr),
            _round6(self.null_ratio), _round6(self.null_lo),
            _round6(self.null_hi),
        )


@dataclass(frozen=True)
class AnalysisReport:
    dataset_name: str
    vertices: int
    edge_count: int
    negative_fraction: float | None
    method: str                       # exact | monte-carlo | orbits | walks | null | fit
    rows: tuple[ReportRow, ...]
    config: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)   # e.g. fit parameters
    wall_time_s: float | None = None

    def rounded(self) -> "AnalysisReport":
        return AnalysisReport(
            self.dataset_name, self.vertices, self.edge_count,
            _round6(self.negative_fraction), self.method,
            tuple(r.rounded() for r in self.rows),
            self.config, self.extra, self.wall_time_s,
        )


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.6g}"
    return str(value)


def emit_report(report: AnalysisReport, fmt: str, sink, *,
                include_timing: bool = False) -> int:
    """Write the report to a text sink; returns the number of characters.

    Timing is opt-in because reports must be byte-identical across runs.
    """
    report = report.rounded()
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for r in report.rows:
            lines.append(",".join(_csv_cell(v) for v in (
                r.length, r.n_pos, r.n_neg, r.ratio, r.neg_to_pos,
                r.clustering, r.stderr, r.null_ratio, r.null_lo, r.null_hi)))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "dataset": {
                "name": report.dataset_name,
                "vertices": report.vertices,
                "edges": report.edge_count,
                "negative_fraction": report.negative_fraction,
            },
            "method": report.method,
            "config": report.config,
            "rows": [
                {
                    "length": r.length, "n_pos": r.n_pos, "n_neg": r.n_neg,
                    "R": _json_num(r.ratio), "U": _json_num(r.neg_to_pos),
                    "K": _json_num(r.clustering),
                    "stderr_R": _json_num(r.stderr),
                    "null_R": _json_num(r.null_ratio),
                    "null_lo": _json_num(r.null_lo),
                    "null_hi": _json_num(r.null_hi),
                }
                for r in report.rows
            ],
        }
        if report.extra:
            payload["extra"] = report.extra
        if include_timing and report.wall_time_s is not None:
            payload["wall_time_s"] = report.wall_time_s
        text = json.dumps(payload, indent=2, sort_keys=False,
                          allow_nan=False) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    sink.write(text)
    return len(text)


def _json_num(x):
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def parse_json_report(text: str) -> dict:
    return json.loads(text)
