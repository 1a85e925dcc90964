"""CSV and minimal SVG output."""
from __future__ import annotations

import csv
import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def _frame(width, height, title):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2}" y="20" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14">{escape(title)}</text>',
    ]


def line_plot_svg(path, x, series: dict, title: str = "", width: int = 800,
                  height: int = 400, hlines=()) -> Path:
    """Overlay of several curves sharing one x axis; ``hlines`` are dashed guides."""
    x = np.asarray(x, dtype=float)
    ys = {k: np.asarray(v, dtype=float) for k, v in series.items()}
    lo = min(min(float(np.nanmin(v)) for v in ys.values()), *hlines) if hlines else \
        min(float(np.nanmin(v)) for v in ys.values())
    hi = max(max(float(np.nanmax(v)) for v in ys.values()), *hlines) if hlines else \
        max(float(np.nanmax(v)) for v in ys.values())
    if hi == lo:
        hi, lo = hi + 1, lo - 1
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    left, right, top, bottom = 60, 20, 35, 40
    pw, ph = width - left - right, height - top - bottom

    def px(v):
        return left + pw * (v - x[0]) / (x[-1] - x[0])

    def py(v):
        return top + ph * (hi - v) / (hi - lo)

    out = _frame(width, height, title)
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for v in (lo + pad, 0.0, hi - pad):
        if lo <= v <= hi:
            out.append(f'<text x="{left - 5}" y="{py(v) + 4:.1f}" text-anchor="end" '
                       f'font-family="sans-serif" font-size="10">{v:.3g}</text>')
    for v in (x[0], x[-1]):
        out.append(f'<text x="{px(v):.1f}" y="{height - bottom + 15}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="10">{v:.3g}</text>')
    for v in hlines:
        out.append(f'<line x1="{left}" x2="{left + pw}" y1="{py(v):.2f}" y2="{py(v):.2f}" '
                   f'stroke="gray" stroke-dasharray="4 3"/>')
    for i, (name, y) in enumerate(ys.items()):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y) if math.isfinite(b))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.2"/>')
        out.append(f'<text x="{left + 10}" y="{top + 15 + 14 * i}" fill="{color}" '
                   f'font-family="sans-serif" font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(out) + "\n")
    return path


def heatmap_svg(path, counts, row_labels, col_labels, vmax: int, title: str = "",
                row_name: str = "", col_name: str = "") -> Path:
    """Integer heat map, white (0) to dark red (``vmax``), one labelled cell per entry."""
    counts = np.asarray(counts)
    nr, nc = counts.shape
    cell = 48
    left, top = 80, 45
    width, height = left + nc * cell + 20, top + nr * cell + 50
    out = _frame(width, height, title)
    for i in range(nr):
        for j in range(nc):
            frac = 0.0 if vmax <= 0 else min(1.0, counts[i, j] / vmax)
            shade = int(round(255 * (1 - frac)))
            color = f"rgb(255,{shade},{shade})"
            x, y = left + j * cell, top + (nr - 1 - i) * cell
            out.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{color}" '
                       f'stroke="#888"/>')
            out.append(f'<text x="{x + cell / 2}" y="{y + cell / 2 + 4}" text-anchor="middle" '
                       f'font-family="sans-serif" font-size="11">{int(counts[i, j])}</text>')
        out.append(f'<text x="{left - 5}" y="{top + (nr - 1 - i) * cell + cell / 2 + 4}" '
                   f'text-anchor="end" font-family="sans-serif" font-size="10">'
                   f'{row_labels[i]:.3g}</text>')
    for j in range(nc):
        out.append(f'<text x="{left + j * cell + cell / 2}" y="{top + nr * cell + 15}" '
                   f'text-anchor="middle" font-family="sans-serif" font-size="10">'
                   f'{col_labels[j]:.3g}</text>')
    out.append(f'<text x="{left + nc * cell / 2}" y="{top + nr * cell + 35}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12">{escape(col_name)}</text>')
    out.append(f'<text x="15" y="{top + nr * cell / 2}" font-family="sans-serif" '
               f'font-size="12">{escape(row_name)}</text>')
    out.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(out) + "\n")
    return path
