"""Experiment report rows with lossless CSV and JSON round trips."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields


@dataclass
class ReportRow:
    instance: str
    n: int
    D: float
    density: int
    c: float
    pairs: int
    max_stretch: float
    mean_stretch: float
    max_table_bits: int
    max_label_bits: int
    max_header_bits: int
    preprocess_seconds: float
    mode: str = "wspd"


_TYPES = {f.name: f.type for f in fields(ReportRow)}
_CAST = {"int": int, "float": float, "str": str}


def rows_to_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(_TYPES), lineterminator="\n")
    w.writeheader()
    for r in rows:
        # repr keeps floats exact on the way back
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in asdict(r).items()})
    return buf.getvalue()


def rows_from_csv(text: str) -> list[ReportRow]:
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append(ReportRow(**{k: _CAST[_TYPES[k]](v) for k, v in rec.items()}))
    return out


def rows_to_json(rows: list[ReportRow], **extra) -> str:
    return json.dumps({"rows": [asdict(r) for r in rows], **extra}, sort_keys=True, indent=1)


def rows_from_json(text: str) -> list[ReportRow]:
    return [ReportRow(**r) for r in json.loads(text)["rows"]]
