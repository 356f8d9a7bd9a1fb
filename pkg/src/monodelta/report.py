"""Serializing reports as JSON, CSV or an aligned text table.

Values are written with 4 decimals in CSV and table output; JSON keeps full
precision. Emission is a pure function of the report, so emitting the same
report twice gives identical bytes. Timings differ between runs, which is
why :func:`strip_timing` exists for comparing two runs.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Literal

from . import __version__
from .scenarios import ReportRow, ScenarioReport

ReportFormat = Literal["json", "csv", "table"]
FORMATS = ("json", "csv", "table")
CSV_HEADER = ("dataset", "measure", "value", "seconds")


def _row_dict(row: ReportRow) -> dict:
    return {
        "scenario": row.scenario,
        "dataset": row.dataset,
        "measure": row.measure,
        "value": row.value,
        "seconds": row.seconds,
        "notes": row.notes,
    }


def _qualified(row: ReportRow) -> str:
    return f"{row.scenario}/{row.dataset}" if row.scenario else row.dataset


def _fmt(value: float | None, missing: str = "") -> str:
    return missing if value is None else f"{value:.4f}"


def to_json(report: ScenarioReport) -> str:
    meta = {"tool": "monodelta", "version": __version__}
    meta.update(report.spec_echo)
    payload = {"meta": meta, "rows": [_row_dict(r) for r in report.rows]}
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def to_csv(report: ScenarioReport) -> str:
    """CSV with header ``dataset,measure,value,seconds``.

    Suite reports carry the scenario in the dataset column as
    ``scenario/dataset`` so each (dataset, measure) pair stays unique. A
    missing value is an empty field.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow([_qualified(row), row.measure, _fmt(row.value), f"{row.seconds:.4f}"])
    return buf.getvalue()


def _grid(datasets: list[str], measures: list[str], cells: dict) -> list[str]:
    header = ["dataset", *measures]
    body = [[d, *(_fmt(cells.get((d, m)), "NA") for m in measures)] for d in datasets]
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = []
    for r in [header, *body]:
        first = r[0].ljust(widths[0])
        rest = (cell.rjust(w) for cell, w in zip(r[1:], widths[1:]))
        lines.append("  ".join([first, *rest]).rstrip())
    return lines


def to_table(report: ScenarioReport) -> str:
    """Measures as columns, datasets as rows, one block per scenario."""
    if not report.rows:
        return "(no rows)\n"
    blocks: dict[str, list[ReportRow]] = {}
    for row in report.rows:
        blocks.setdefault(row.scenario, []).append(row)
    out = []
    for scenario, rows in blocks.items():
        datasets = list(dict.fromkeys(r.dataset for r in rows))
        measures = list(dict.fromkeys(r.measure for r in rows))
        cells = {(r.dataset, r.measure): r.value for r in rows}
        if scenario:
            out.append(f"[{scenario}]")
        out.extend(_grid(datasets, measures, cells))
        out.append("")
    return "\n".join(out)


def emit_report(report: ScenarioReport, format: ReportFormat = "table") -> bytes:
    """Render ``report`` in ``format`` as UTF-8 bytes."""
    if format == "json":
        text = to_json(report)
    elif format == "csv":
        text = to_csv(report)
    elif format == "table":
        text = to_table(report)
    else:
        raise ValueError(f"unknown report format {format!r}; choose from {', '.join(FORMATS)}")
    return text.encode("utf-8")


def strip_timing(report: ScenarioReport) -> ScenarioReport:
    """Copy of ``report`` with every ``seconds`` field set to 0."""
    rows = tuple(ReportRow(r.scenario, r.dataset, r.measure, r.value, 0.0, r.notes) for r in report.rows)
    return ScenarioReport(rows, report.spec_echo)


def read_csv_report(text: str) -> list[tuple[str, str, float | None, float]]:
    """Parse a CSV emitted by :func:`to_csv` back into tuples."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"unexpected header {header}")
    return [(d, m, float(v) if v else None, float(s)) for d, m, v, s in reader]
