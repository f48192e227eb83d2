"""Minimal log-log line plots written as plain SVG polylines."""
from __future__ import annotations

import math
from typing import Dict, Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 170, 30, 50
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f"]


def _f(v: float) -> str:
    return f"{v:.2f}"


def loglog_svg(xs: Sequence[float], series: Dict[str, Sequence[float]], title: str = "",
               xlabel: str = "n", ylabel: str = "error") -> str:
    """One polyline per series; non-positive values are dropped."""
    pts = {}
    for name, ys in series.items():
        pts[name] = [(math.log10(x), math.log10(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    allx = [p[0] for v in pts.values() for p in v] or [0.0, 1.0]
    ally = [p[1] for v in pts.values() for p in v] or [0.0, 1.0]
    x0, x1 = min(allx), max(allx)
    y0, y1 = math.floor(min(ally)), math.ceil(max(ally))
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y1 = y0 + 1
    # the legend sits right of the plot; grow the canvas when it is long
    height = max(HEIGHT, MARGIN_T + 16 * len(pts) + 30)
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = height - MARGIN_T - MARGIN_B

    def sx(v):
        return MARGIN_L + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MARGIN_T + (y1 - v) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line x1="{MARGIN_L}" y1="{_f(sy(y0))}" x2="{_f(MARGIN_L + pw)}" y2="{_f(sy(y0))}" stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{_f(sy(y0))}" x2="{MARGIN_L}" y2="{_f(sy(y1))}" stroke="black"/>',
    ]
    for e in range(int(y0), int(y1) + 1):
        out.append(f'<text x="{MARGIN_L - 6}" y="{_f(sy(e) + 4)}" text-anchor="end" font-size="11">1e{e}</text>')
    for x in xs:
        if x > 0:
            lx = math.log10(x)
            out.append(f'<text x="{_f(sx(lx))}" y="{_f(sy(y0) + 16)}" text-anchor="middle" font-size="11">{x:g}</text>')
    out.append(f'<text x="{_f(MARGIN_L + pw / 2)}" y="{height - 8}" text-anchor="middle" font-size="12">{escape(xlabel)} (log)</text>')
    out.append(f'<text x="14" y="{_f(MARGIN_T + ph / 2)}" text-anchor="middle" font-size="12" '
               f'transform="rotate(-90 14 {_f(MARGIN_T + ph / 2)})">{escape(ylabel)} (log)</text>')
    for k, (name, p) in enumerate(pts.items()):
        color = COLORS[k % len(COLORS)]
        if p:
            coords = " ".join(f"{_f(sx(a))},{_f(sy(b))}" for a, b in p)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        ly = MARGIN_T + 14 + 16 * k
        out.append(f'<line x1="{WIDTH - MARGIN_R + 12}" y1="{ly - 4}" x2="{WIDTH - MARGIN_R + 32}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{WIDTH - MARGIN_R + 38}" y="{ly}" font-size="11">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
