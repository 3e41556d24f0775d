"""Report files: CSV, JSON and two self-contained SVG charts.

Emission is byte-stable for identical inputs: fixed float formatting, no
timestamps, sorted keys.  The charts embed their data in ``data-*``
attributes so they can be checked structurally without rendering.

families.svg   one bar per signature family (subset count, left axis)
               with a cumulative program-unit curve (right axis).
reductions.svg grouped mean-work bars (baseline / signature family /
               reordered family) per signature on a log10 Y axis,
               signatures ordered by descending baseline mean.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Sequence

from .evaluation import EvaluationReport
from .families import BASELINE_KEY, FamilyStatsRow

CSV_HEADER = "signature,n_pus,T1,T2,T3,M1,M2,M3"

_MARGIN_LEFT = 60.0
_MARGIN_RIGHT = 60.0
_MARGIN_TOP = 20.0
_MARGIN_BOTTOM = 70.0
_PLOT_HEIGHT = 280.0
_LOG_FLOOR = 0.01


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def report_to_csv(report: EvaluationReport) -> str:
    lines = [CSV_HEADER]
    for r in report.rows:
        lines.append(
            f"{r.signature},{r.n_pus},{r.t1},{r.t2},{r.t3},"
            f"{r.m1:.6f},{r.m2:.6f},{r.m3:.6f}"
        )
    return "\n".join(lines) + "\n"


def report_to_json(report: EvaluationReport) -> str:
    obj = {
        "rows": [
            {
                "signature": r.signature,
                "n_pus": r.n_pus,
                "T1": r.t1,
                "T2": r.t2,
                "T3": r.t3,
                "M1": round(r.m1, 6),
                "M2": round(r.m2, 6),
                "M3": round(r.m3, 6),
            }
            for r in report.rows
        ],
        "totals": report.totals,
        "reductions": report.reductions,
        "provenance": report.provenance,
    }
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _svg_open(width: float, extra: str = "") -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(_MARGIN_TOP + _PLOT_HEIGHT + _MARGIN_BOTTOM)}"{extra}>'
    )


def _x_label(x: float, text: str) -> str:
    y = _MARGIN_TOP + _PLOT_HEIGHT + 12.0
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="8" text-anchor="end" '
        f'transform="rotate(-60 {_fmt(x)} {_fmt(y)})">{text}</text>'
    )


def families_svg(stats_rows: Sequence[FamilyStatsRow]) -> str:
    """Subset count per signature family plus a cumulative population curve."""
    rows = [r for r in stats_rows if r.key != BASELINE_KEY]
    bar_w, gap = 10.0, 4.0
    width = _MARGIN_LEFT + max(1, len(rows)) * (bar_w + gap) + _MARGIN_RIGHT
    max_count = max((r.subset_count for r in rows), default=1) or 1
    cumulative: list[int] = []
    running = 0
    for r in rows:
        running += r.population
        cumulative.append(running)
    max_cum = cumulative[-1] if cumulative else 1

    parts = [_svg_open(width, ' data-chart="family-sizes"')]
    parts.append(
        f'<line x1="{_fmt(_MARGIN_LEFT)}" y1="{_fmt(_MARGIN_TOP + _PLOT_HEIGHT)}" '
        f'x2="{_fmt(width - _MARGIN_RIGHT)}" y2="{_fmt(_MARGIN_TOP + _PLOT_HEIGHT)}" stroke="black"/>'
    )
    points = []
    for i, r in enumerate(rows):
        x = _MARGIN_LEFT + i * (bar_w + gap)
        h = _PLOT_HEIGHT * r.subset_count / max_count
        y = _MARGIN_TOP + _PLOT_HEIGHT - h
        parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(bar_w)}" height="{_fmt(h)}" '
            f'fill="#c23b22" data-signature="{r.key}" data-subsets="{r.subset_count}" '
            f'data-population="{r.population}"/>'
        )
        cy = _MARGIN_TOP + _PLOT_HEIGHT * (1.0 - cumulative[i] / max_cum)
        points.append(f"{_fmt(x + bar_w / 2)},{_fmt(cy)}")
        parts.append(_x_label(x + bar_w / 2, r.key))
    if points:
        parts.append(
            f'<polyline points="{" ".join(points)}" fill="none" stroke="#2e8b57" '
            f'stroke-width="1.5" data-cumulative="{",".join(str(c) for c in cumulative)}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def reductions_svg(report: EvaluationReport) -> str:
    """Grouped mean-work bars per signature, log10 Y axis, descending M1."""
    rows = report.rows
    bar_w, gap = 5.0, 6.0
    group_w = 3 * bar_w + gap
    width = _MARGIN_LEFT + max(1, len(rows)) * group_w + _MARGIN_RIGHT
    vmax = max((max(r.m1, r.m2, r.m3) for r in rows), default=1.0)
    top = math.log10(max(vmax, _LOG_FLOOR * 10))
    floor = math.log10(_LOG_FLOOR)

    def height(v: float) -> float:
        clamped = max(v, _LOG_FLOOR)
        return _PLOT_HEIGHT * (math.log10(clamped) - floor) / (top - floor)

    parts = [
        _svg_open(
            width,
            f' data-chart="mean-work" data-y-scale="log10" data-y-floor="{_LOG_FLOOR}"',
        )
    ]
    parts.append(
        f'<line x1="{_fmt(_MARGIN_LEFT)}" y1="{_fmt(_MARGIN_TOP + _PLOT_HEIGHT)}" '
        f'x2="{_fmt(width - _MARGIN_RIGHT)}" y2="{_fmt(_MARGIN_TOP + _PLOT_HEIGHT)}" stroke="black"/>'
    )
    colors = ("#c23b22", "#2e8b57", "#1f66a8")
    for i, r in enumerate(rows):
        x0 = _MARGIN_LEFT + i * group_w
        values = (r.m1, r.m2, r.m3)
        for k, (v, color) in enumerate(zip(values, colors)):
            h = height(v)
            x = x0 + k * bar_w
            y = _MARGIN_TOP + _PLOT_HEIGHT - h
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(bar_w)}" height="{_fmt(h)}" '
                f'fill="{color}"/>'
            )
        parts.append(
            f'<g data-signature="{r.signature}" data-m1="{r.m1:.6f}" '
            f'data-m2="{r.m2:.6f}" data-m3="{r.m3:.6f}"/>'
        )
        parts.append(_x_label(x0 + group_w / 2, r.signature))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_report(
    report: EvaluationReport,
    stats_rows: Sequence[FamilyStatsRow],
    out_dir: str | Path,
    formats: Iterable[str] = ("csv", "json", "svg"),
) -> dict[str, Path]:
    """Write the selected formats into out_dir; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    wanted = set(formats)
    unknown = wanted - {"csv", "json", "svg"}
    if unknown:
        raise ValueError(f"unknown report formats: {sorted(unknown)}")
    if "csv" in wanted:
        path = out / "report.csv"
        path.write_text(report_to_csv(report), encoding="utf-8", newline="\n")
        written["csv"] = path
    if "json" in wanted:
        path = out / "report.json"
        path.write_text(report_to_json(report), encoding="utf-8", newline="\n")
        written["json"] = path
    if "svg" in wanted:
        fam_path = out / "families.svg"
        fam_path.write_text(families_svg(stats_rows), encoding="utf-8", newline="\n")
        written["families_svg"] = fam_path
        red_path = out / "reductions.svg"
        red_path.write_text(reductions_svg(report), encoding="utf-8", newline="\n")
        written["reductions_svg"] = red_path
    return written
