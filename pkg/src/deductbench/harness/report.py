"""Tables of metrics with one column per dataset variant."""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional

from ..perturb.sample import SCHEMA_VERSION, VARIANTS
from .metrics import Metrics

MISSING = "—"
METRIC_NAMES = ("accuracy", "execution_rate", "valid_accuracy")
FORMATS = ("markdown", "csv", "json")


def round_half_up(x: float, places: int = 2) -> str:
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


def _cell(value: Optional[float]) -> str:
    return MISSING if value is None else round_half_up(value)


def _value(m: Optional[Metrics], name: str) -> Optional[float]:
    return None if m is None else getattr(m, name)


def _runs(metrics) -> list:
    if isinstance(metrics, Metrics):
        return [("run", metrics)]
    if isinstance(metrics, dict):
        return list(metrics.items())
    return list(metrics)


def _average(runs: list, variant: str, name: str) -> Optional[float]:
    values = [_value(m.per_variant.get(variant), name) for _, m in runs]
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else None


def _rows(runs: list, name: str) -> list:
    rows = [[label] + [_cell(_value(m.per_variant.get(v), name)) for v in VARIANTS] for label, m in runs]
    if len(runs) > 1:
        rows.append(["Avg"] + [_cell(_average(runs, v, name)) for v in VARIANTS])
    return rows


def report(metrics, fmt: str = "markdown") -> str:
    """Render one Metrics, or several named ones (a dict or list of pairs).

    Tables round half-up to two decimals and show undefined values as a dash;
    JSON keeps full precision and uses null.
    """
    runs = _runs(metrics)
    if fmt == "json":
        if isinstance(metrics, Metrics):
            body = metrics.to_dict()
        else:
            body = {"schema_version": SCHEMA_VERSION, "runs": {label: m.to_dict() for label, m in runs}}
        return json.dumps(body, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["run", "metric", *VARIANTS])
        for name in METRIC_NAMES:
            for row in _rows(runs, name):
                w.writerow([row[0], name, *row[1:]])
        return buf.getvalue()
    if fmt == "markdown":
        lines = []
        for name in METRIC_NAMES:
            lines.append(f"### {name}")
            lines.append("")
            lines.append("| run | " + " | ".join(VARIANTS) + " |")
            lines.append("|---" * (len(VARIANTS) + 1) + "|")
            for row in _rows(runs, name):
                lines.append("| " + " | ".join(row) + " |")
            lines.append("")
        return "\n".join(lines)
    raise ValueError(f"unknown report format {fmt!r}; expected one of {', '.join(FORMATS)}")
