"""Rendering of metric tables as CSV, aligned Markdown or JSON."""
from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal

TABLE_HEADERS = (
    "Configuration", "K", "MAS", "H", "H/ln K", "H₂", "H₂/ln K", "1−HHI", "1−HHI*", "1−Gini",
)

FORMATS = ("csv", "markdown", "json")


def round_half_away(x: float, precision: int) -> str:
    """Format ``x`` with ``precision`` decimals, rounding ties away from zero.

    The exact binary value of ``x`` is rounded, not its shortest repr.
    """
    if not 0 <= precision <= 12:
        raise ValueError(f"precision must be in [0, 12], got {precision}")
    quantum = Decimal(1).scaleb(-precision)
    text = str(Decimal(float(x)).quantize(quantum, rounding=ROUND_HALF_UP))
    if text.startswith("-") and Decimal(text) == 0:
        text = text[1:]
    return text


def format_cell(value, precision: int) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool,)) or value is None:
        return str(value)
    if isinstance(value, int):
        return str(value)
    return round_half_away(value, precision)


def render(headers, rows, fmt: str = "markdown", precision: int = 4) -> str:
    """Render ``rows`` (sequences aligned with ``headers``) in ``fmt``."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
    cells = [[format_cell(v, precision) for v in row] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(cells)
        return buf.getvalue()
    if fmt == "json":
        records = []
        for row, shown in zip(rows, cells):
            rec = {}
            for h, raw, txt in zip(headers, row, shown):
                if isinstance(raw, float):
                    rec[h] = float(txt)
                else:
                    rec[h] = raw
            records.append(rec)
        return json.dumps(records, indent=2, ensure_ascii=False) + "\n"
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(headers)]

    def line(values, align_first_left=True):
        parts = []
        for i, (v, w) in enumerate(zip(values, widths)):
            parts.append(v.ljust(w) if (i == 0 and align_first_left) else v.rjust(w))
        return "| " + " | ".join(parts) + " |"

    sep = "|" + "|".join(
        (":" + "-" * (w + 1)) if i == 0 else ("-" * (w + 1) + ":") for i, w in enumerate(widths)
    ) + "|"
    out = [line(headers), sep] + [line(r) for r in cells]
    return "\n".join(out) + "\n"
