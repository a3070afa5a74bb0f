"""Shared rendering of energy reports: fixed-width tables and JSON documents.

Tables show annual energy per network segment with three significant
figures; the structured format keeps full precision and round-trips
losslessly. Rendering is pure and locale-independent.
"""

from __future__ import annotations

import json
from typing import Any, Optional, Sequence

from .errors import ConfigError
from .scenario import EnergyReport

__all__ = [
    "SEGMENT_LABELS",
    "SEGMENT_ORDER",
    "format_energy",
    "render",
    "render_json",
    "render_series",
    "render_table",
]

SEGMENT_ORDER = ("onu", "access", "national", "longhaul", "cdn", "cache_devices", "dynamic")
SEGMENT_LABELS = {
    "onu": "ONU",
    "access": "Access",
    "national": "National Core+Edge",
    "longhaul": "Int. longhaul",
    "cdn": "CDN",
    "cache_devices": "Cache devices",
    "dynamic": "Dynamic",
}


def format_energy(gwh: float) -> str:
    """Annual energy with three significant figures, plain decimal point."""
    return f"{gwh:.3g}"


def _with_deltas(
    reports: Sequence[EnergyReport], baseline_name: Optional[str]
) -> list[EnergyReport]:
    if baseline_name is None:
        return list(reports)
    baseline = next((r for r in reports if r.scenario == baseline_name), None)
    if baseline is None:
        raise ConfigError(
            f"baseline scenario {baseline_name!r} is not among the rendered reports",
            field="baseline",
        )
    return [r.with_baseline(baseline) for r in reports]


def render_table(
    reports: Sequence[EnergyReport], baseline_name: Optional[str] = None
) -> str:
    """Fixed-width per-segment energy table plus a volume/efficiency footer."""
    rows = _with_deltas(reports, baseline_name)
    segments = [s for s in SEGMENT_ORDER if any(s in r.segments for r in rows)]
    header = ["Scenario"] + [SEGMENT_LABELS[s] for s in segments] + ["Total"]
    if baseline_name is not None:
        header.append("Delta")
    table = [header]
    for r in rows:
        cells = [r.scenario]
        for s in segments:
            seg = r.segments.get(s)
            cells.append(format_energy(seg.energy_gwh) if seg else "-")
        cells.append(format_energy(r.total_gwh))
        if baseline_name is not None:
            cells.append(f"{r.delta_pct:+.0f}%")
        table.append(cells)

    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)) for row in table]
    lines.insert(1, "-" * len(lines[0]))

    lines.append("")
    lines.append("Yearly volume and efficiency:")
    for r in rows:
        lines.append(
            f"  {r.scenario.ljust(widths[0])}  {r.volume_eb:.3g} EB"
            f"  {r.wh_per_gb:.4g} Wh/GB"
        )
    lines.append("")
    lines.append("Annual energies in GWh (8760 h/yr).")
    return "\n".join(lines)


def render_json(
    reports: Sequence[EnergyReport], baseline_name: Optional[str] = None
) -> str:
    """Stable machine-readable document; keys sorted, full float precision."""
    rows = _with_deltas(reports, baseline_name)
    doc: dict[str, Any] = {
        "schema_version": 1,
        "reports": [r.to_mapping() for r in rows],
    }
    if baseline_name is not None:
        doc["baseline"] = baseline_name
    return json.dumps(doc, sort_keys=True, indent=2)


def render_series(reports: Sequence[EnergyReport], parameter: str) -> str:
    """Sweep output: one record per value with delta, total and efficiency."""
    records = []
    for r in reports:
        value = None
        if "[" in r.scenario and "=" in r.scenario:
            value = float(r.scenario.rsplit("=", 1)[1].rstrip("]"))
        records.append(
            {
                "value": value,
                "scenario": r.scenario,
                "delta_gwh": r.delta_gwh,
                "total_gwh": r.total_gwh,
                "wh_per_gb": r.wh_per_gb,
            }
        )
    return json.dumps(
        {"schema_version": 1, "parameter": parameter, "series": records},
        sort_keys=True,
        indent=2,
    )


def render(
    reports: Sequence[EnergyReport],
    baseline_name: Optional[str] = None,
    fmt: str = "table",
) -> str:
    if fmt == "table":
        return render_table(reports, baseline_name)
    if fmt == "json":
        return render_json(reports, baseline_name)
    raise ConfigError(f"unknown format {fmt!r}", field="format")
