"""CSV / JSON serialisation of sweep results."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict
from typing import Any, Iterable, Mapping

from .. import __version__
from ..params import Scenario

CSV_COLUMNS = ("variable", "value", "scenario", "method", "essr_bps_hz", "std_err")


def fmt(value: float | None) -> str:
    """17 significant digits, which round-trips any float64."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return f"{value:.17g}"


def _cell(value: Any) -> str:
    if value is None or isinstance(value, float):
        return fmt(value)
    return str(value)


def to_csv(records: Iterable[Mapping[str, Any]], columns: tuple[str, ...] = CSV_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, Any]]:
    """Parse CSV produced by :func:`to_csv`; numeric columns come back as floats."""
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        out: dict[str, Any] = {}
        for key, raw in rec.items():
            if raw == "":
                out[key] = None
                continue
            try:
                out[key] = float(raw)
            except ValueError:
                out[key] = raw
        rows.append(out)
    return rows


def config_echo(scenario: Scenario) -> dict[str, Any]:
    return {
        "config": dict(scenario.raw),
        "linear": asdict(scenario.params),
        "topology": asdict(scenario.topology),
        "mean_gains": asdict(scenario.gains),
    }


def to_json(scenario: Scenario, records: Iterable[Mapping[str, Any]], **extra: Any) -> str:
    doc = {
        "params": config_echo(scenario),
        "rows": [dict(r) for r in records],
        "tool_version": __version__,
        **extra,
    }
    return json.dumps(doc, indent=2, allow_nan=False, default=_json_default) + "\n"


def _json_default(obj: Any) -> Any:
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")
