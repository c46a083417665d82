"""Canonical text output: floats at 17 significant digits, stable JSON/CSV.

17 significant digits round-trip an IEEE double exactly, so any artifact
written here survives parse -> serialize byte for byte (the round-trip
property the CLI tests pin down).
"""

from __future__ import annotations

import json

__all__ = ["fmt_float", "json_canonical", "csv_lines"]


def fmt_float(x: float) -> str:
    """Decimal string with 17 significant digits (exact double round-trip)."""
    return f"{float(x):.17g}"


def json_canonical(payload) -> str:
    """Deterministic JSON rendering: sorted keys, fixed separators, newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def csv_lines(header: list[str], rows: list[list[str]]) -> str:
    """Plain comma-joined CSV (all cells pre-rendered, no quoting needed)."""
    out = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(
                f"row width {len(row)} does not match header width {len(header)}"
            )
        out.append(",".join(row))
    return "\n".join(out) + "\n"
