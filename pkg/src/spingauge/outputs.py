"""Deterministic file outputs: CSV series, JSON summary, and SVG plots.

Floats are written with repr(), the shortest decimal that round-trips to the
same binary value, so parsing the CSV back reproduces stored values exactly
and identical runs produce byte-identical files. The SVG writer is a minimal
polyline plotter (axes, ticks, labels) so plotting needs no dependency.
"""

from __future__ import annotations

import json
import math
import os
from typing import Dict, List, Sequence, Tuple

from .classical import TrajectorySeries
from .quantum import ObservableRecord

__all__ = [
    "TRAJECTORY_HEADER",
    "OBSERVABLES_HEADER",
    "SCHEMA_VERSION",
    "format_float",
    "write_trajectory_csv",
    "write_observables_csv",
    "write_summary_json",
    "write_svg",
]

SCHEMA_VERSION = 1

TRAJECTORY_HEADER = ("t,rx,ry,rz,px,py,pz,sx,sy,sz,"
                     "f1x,f1y,f1z,f2x,f2y,f2z")
OBSERVABLES_HEADER = "t,norm,rx,ry,px,py,sigx,sigy,sigz,ycu,ycd"


def format_float(x: float) -> str:
    return repr(float(x))


def write_trajectory_csv(path: str, series: TrajectorySeries,
                         sample_every: int = 1) -> None:
    lines = [TRAJECTORY_HEADER]
    n = len(series)
    indices = list(range(0, n, sample_every))
    if indices and indices[-1] != n - 1:
        indices.append(n - 1)
    for i in indices:
        row = ([series.times[i]] + list(series.positions[i])
               + list(series.momenta[i]) + list(series.spins[i])
               + list(series.f_gradient[i]) + list(series.f_transverse[i]))
        lines.append(",".join(format_float(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def write_observables_csv(path: str, records: Sequence[ObservableRecord]) -> None:
    lines = [OBSERVABLES_HEADER]
    for rec in records:
        row = [rec.t, rec.norm, rec.mean_r[0], rec.mean_r[1],
               rec.mean_p[0], rec.mean_p[1],
               rec.mean_sigma[0], rec.mean_sigma[1], rec.mean_sigma[2],
               rec.y_centroid_up, rec.y_centroid_down]
        lines.append(",".join(format_float(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def write_summary_json(path: str, summary: Dict) -> None:
    payload = dict(summary)
    payload.setdefault("schema_version", SCHEMA_VERSION)
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True,
                                 allow_nan=True) + "\n")


def _write_text(path: str, text: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# minimal SVG plotting

_COLORS = ("#1f6feb", "#d62728", "#2ca02c", "#9467bd")
_WIDTH, _HEIGHT = 640, 480
_MARGIN = 56.0


def _finite_points(xs, ys) -> List[Tuple[float, float]]:
    return [(float(x), float(y)) for x, y in zip(xs, ys)
            if math.isfinite(float(x)) and math.isfinite(float(y))]


def write_svg(path: str, curves: Sequence[Tuple[str, Sequence[float], Sequence[float]]],
              title: str, xlabel: str, ylabel: str) -> None:
    """Polyline plot of (label, xs, ys) curves with shared axes."""
    cleaned = [(label, _finite_points(xs, ys)) for label, xs, ys in curves]
    pts = [p for _, plist in cleaned for p in plist]
    if pts:
        x_min = min(p[0] for p in pts)
        x_max = max(p[0] for p in pts)
        y_min = min(p[1] for p in pts)
        y_max = max(p[1] for p in pts)
    else:
        x_min = y_min = 0.0
        x_max = y_max = 1.0
    if x_max == x_min:
        x_max = x_min + 1.0
    if y_max == y_min:
        y_max = y_min + 1.0
    span_x = x_max - x_min
    span_y = y_max - y_min
    plot_w = _WIDTH - 2 * _MARGIN
    plot_h = _HEIGHT - 2 * _MARGIN

    def sx(x):
        return _MARGIN + (x - x_min) / span_x * plot_w

    def sy(y):
        return _HEIGHT - _MARGIN - (y - y_min) / span_y * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
        # axes
        f'<line x1="{_MARGIN}" y1="{_HEIGHT - _MARGIN}" x2="{_WIDTH - _MARGIN}" '
        f'y2="{_HEIGHT - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_HEIGHT - _MARGIN}" stroke="black"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="{_HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="16" y="{_HEIGHT / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_HEIGHT / 2:.1f})">{ylabel}</text>',
    ]
    # tick labels at the corners of the data range
    for x_val, anchor in ((x_min, "start"), (x_max, "end")):
        parts.append(f'<text x="{sx(x_val):.1f}" y="{_HEIGHT - _MARGIN + 16:.1f}" '
                     f'text-anchor="{anchor}" font-family="sans-serif" '
                     f'font-size="10">{x_val:.6g}</text>')
    for y_val in (y_min, y_max):
        parts.append(f'<text x="{_MARGIN - 6:.1f}" y="{sy(y_val) + 4:.1f}" '
                     f'text-anchor="end" font-family="sans-serif" '
                     f'font-size="10">{y_val:.6g}</text>')
    for idx, (label, plist) in enumerate(cleaned):
        color = _COLORS[idx % len(_COLORS)]
        if plist:
            coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in plist)
            parts.append(f'<polyline points="{coords}" fill="none" '
                         f'stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{_WIDTH - _MARGIN:.1f}" y="{_MARGIN + 16 * idx + 4:.1f}" '
                     f'text-anchor="end" font-family="sans-serif" font-size="11" '
                     f'fill="{color}">{label}</text>')
    parts.append("</svg>")
    _write_text(path, "\n".join(parts) + "\n")
