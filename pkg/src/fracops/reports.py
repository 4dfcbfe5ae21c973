"""Machine-readable study reports with deterministic serialization.

Numbers are written with 17 significant digits so doubles round-trip
exactly; identical report content always serializes to identical bytes.
Wall time is carried on the report object for logging but is not part of
the serialized payload (it would break byte-for-byte reproducibility).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

SCHEMA_VERSION = "1"

CSV_HEADER = "command,n,h,residual,empirical_order,extra"


def format_float(x: float) -> str:
    """17-significant-digit decimal form; round-trips any double."""
    return f"{x:.17g}"


def empirical_orders(residuals: list[float]) -> list[Optional[float]]:
    """log2 ratios of successive residuals; None for the first row and
    whenever a ratio is degenerate (zero or non-finite residuals)."""
    orders: list[Optional[float]] = [None]
    for prev, cur in zip(residuals, residuals[1:]):
        if prev > 0.0 and cur > 0.0 and math.isfinite(prev) and math.isfinite(cur):
            orders.append(math.log2(prev / cur))
        else:
            orders.append(None)
    return orders


@dataclass
class ReportRow:
    n: int
    h: float
    residual: Optional[float] = None
    empirical_order: Optional[float] = None
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class Report:
    command: str
    rows: list[ReportRow]
    schema_version: str = SCHEMA_VERSION
    wall_time_ms: float = 0.0


def _extra_text(extra: dict[str, str]) -> str:
    return ";".join(f"{k}={v}" for k, v in extra.items())


def emit_csv(report: Report) -> bytes:
    lines = [CSV_HEADER]
    for row in report.rows:
        fields = [
            report.command,
            str(row.n),
            format_float(row.h),
            "" if row.residual is None else format_float(row.residual),
            "" if row.empirical_order is None else format_float(row.empirical_order),
            _extra_text(row.extra),
        ]
        lines.append(",".join(fields))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _json_string(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch in ('"', "\\"):
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _json_number(x: Optional[float]) -> str:
    if x is None:
        return "null"
    return format_float(x)


def emit_json(report: Report) -> bytes:
    # Hand-rolled so numbers carry the same 17-digit formatting as the CSV
    # and key order is fixed.
    row_texts = []
    for row in report.rows:
        extra_items = ",".join(
            f"{_json_string(k)}:{_json_string(v)}" for k, v in row.extra.items()
        )
        row_texts.append(
            "{"
            f'"n":{row.n},'
            f'"h":{format_float(row.h)},'
            f'"residual":{_json_number(row.residual)},'
            f'"empirical_order":{_json_number(row.empirical_order)},'
            f'"extra":{{{extra_items}}}'
            "}"
        )
    payload = (
        "{"
        f'"schema_version":{_json_string(report.schema_version)},'
        f'"command":{_json_string(report.command)},'
        f'"rows":[{",".join(row_texts)}]'
        "}"
    )
    return (payload + "\n").encode("utf-8")


def emit(report: Report, fmt: str) -> bytes:
    if fmt == "csv":
        return emit_csv(report)
    if fmt == "json":
        return emit_json(report)
    raise ValueError(f"unknown output format {fmt!r}; valid: csv, json")
