"""Deterministic CSV / JSON-lines output for experiment runs.

Every file starts with '#'-prefixed manifest lines carrying the full
configuration, the seed, the code version, and the multiplier blend
identifier, so a row can always be traced back to its run.  Floats are
written with repr (shortest round-trip form), which makes identical runs
byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

from .. import __version__
from ..diagnostics import CSV_COLUMNS, DiagnosticsRecord
from ..operators import BLEND_SMOOTHSTEP_LOG


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def manifest_lines(manifest: dict, extra: dict | None = None) -> list[str]:
    lines = ["# nlslab-run v1"]
    merged = dict(manifest)
    merged["version"] = __version__
    merged["blend"] = BLEND_SMOOTHSTEP_LOG
    if extra:
        merged.update(extra)
    for key, value in merged.items():
        lines.append(f"# {key} = {_format(value)}")
    return lines


def write_records_csv(
    path, records: list[DiagnosticsRecord], manifest: dict, extra: dict | None = None
) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = manifest_lines(manifest, extra)
    lines.append(",".join(CSV_COLUMNS))
    for rec in records:
        lines.append(",".join(_format(getattr(rec, col)) for col in CSV_COLUMNS))
    path.write_text("\n".join(lines) + "\n")


def read_records_csv(path) -> tuple[dict, list[DiagnosticsRecord]]:
    header: dict[str, str] = {}
    records: list[DiagnosticsRecord] = []
    columns: list[str] | None = None
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, sep, value = line[1:].partition("=")
                if sep:
                    header[key.strip()] = value.strip()
                continue
            if not line:
                continue
            if columns is None:
                columns = line.split(",")
                continue
            raw = line.split(",")
            kwargs = {
                col: (None if tok == "" else float(tok)) for col, tok in zip(columns, raw)
            }
            records.append(DiagnosticsRecord(**kwargs))
    if columns is None:
        raise ValueError(f"{path}: no column header found")
    return header, records


def write_summary_jsonl(path, entries: list[dict], manifest: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = manifest_lines(manifest)
    for entry in entries:
        lines.append(json.dumps(entry, sort_keys=True))
    path.write_text("\n".join(lines) + "\n")


def read_summary_jsonl(path) -> list[dict]:
    entries = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            entries.append(json.loads(line))
    return entries
