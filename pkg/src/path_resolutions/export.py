"""Stable text, CSV and JSON renderings of tables, complexes and matchings."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
import sys
from typing import Any

from .betti import BettiTable
from .errors import InvalidInput
from .morse import Matching
from .staircase import ComplexYdn

FORMATS = ("text", "json", "csv")


def dump_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def betti_table_json(table: BettiTable) -> str:
    return dump_json(
        {
            "n": table.n,
            "d": table.d,
            "method": table.method,
            "entries": [
                {"i": i, "j": j, "beta": value} for (i, j), value in sorted(table.entries.items())
            ],
            "version": "betti-v1",
        }
    )


def betti_table_text(table: BettiTable) -> str:
    return "".join(
        f"beta({i},{j}) = {value}\n" for (i, j), value in sorted(table.entries.items())
    )


def betti_table_csv(table: BettiTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["i", "j", "beta"])
    for (i, j), value in sorted(table.entries.items()):
        writer.writerow([i, j, value])
    return buffer.getvalue()


def format_table(table: BettiTable, fmt: str) -> str:
    if fmt == "text":
        return betti_table_text(table)
    if fmt == "json":
        return betti_table_json(table)
    if fmt == "csv":
        return betti_table_csv(table)
    raise InvalidInput(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def complex_json(X: ComplexYdn) -> str:
    cells = [
        {
            "id": cell_id,
            "rows": [list(row) for row in cell.rows],
            "dim": cell.dim,
            "label": list(X.labels[cell_id].exponents),
        }
        for cell_id, cell in enumerate(X.cells)
    ]
    boundary = [
        {"id": cell_id, "faces": [[face, sign] for face, sign in faces]}
        for cell_id, faces in enumerate(X.boundaries)
    ]
    return dump_json({"n": X.n, "d": X.d, "cells": cells, "boundary": boundary, "version": "ydn-v1"})


def matching_json(M: Matching[int]) -> str:
    return dump_json(
        {
            "pairs": [[lower, upper] for lower, upper in sorted(M.pairs)],
            "critical": sorted(M.critical),
            "version": "morse-v1",
        }
    )


def write_output(text: str, path: Path | None = None) -> None:
    """Write to path (parents created) or to stdout when no path is given."""

    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
