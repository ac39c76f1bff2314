"""Static SVG polyline charts; no scripts, no external assets."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

WIDTH = 960
HEIGHT = 320
MARGIN_L = 64
MARGIN_R = 16
MARGIN_T = 28
MARGIN_B = 36

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")
TICK_COLOR = "#f0a202"


def _finite_pairs(xs, ys):
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    keep = np.isfinite(x) & np.isfinite(y)
    return x[keep], y[keep]


def _span(lo: float, hi: float):
    if hi <= lo:
        pad = max(abs(lo), 1.0) * 0.05
        return lo - pad, hi + pad
    return lo, hi


def polyline_chart(path, title: str, tracks, ticks=(), xlabel: str = "time [s]",
                   ylabel: str = "") -> None:
    """tracks: iterable of (label, xs, ys); ticks: vertical marker positions."""
    cleaned = []
    for label, xs, ys in tracks:
        x, y = _finite_pairs(xs, ys)
        if len(x):
            cleaned.append((label, x, y))
    if cleaned:
        x_lo = min(float(x.min()) for _, x, _ in cleaned)
        x_hi = max(float(x.max()) for _, x, _ in cleaned)
        y_lo = min(float(y.min()) for _, _, y in cleaned)
        y_hi = max(float(y.max()) for _, _, y in cleaned)
    else:
        x_lo, x_hi, y_lo, y_hi = 0.0, 1.0, 0.0, 1.0
    x_lo, x_hi = _span(x_lo, x_hi)
    y_lo, y_hi = _span(y_lo, y_hi)
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return MARGIN_T + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{MARGIN_L}" y="18" font-family="sans-serif" font-size="14" '
        f'fill="#222222">{escape(title)}</text>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#888888" stroke-width="1"/>',
    ]
    for k in range(5):
        xv = x_lo + (x_hi - x_lo) * k / 4
        yv = y_lo + (y_hi - y_lo) * k / 4
        parts.append(
            f'<text x="{px(xv):.1f}" y="{HEIGHT - 14}" font-family="sans-serif" '
            f'font-size="11" fill="#444444" text-anchor="middle">{xv:.4g}</text>')
        parts.append(
            f'<text x="{MARGIN_L - 6}" y="{py(yv) + 4:.1f}" font-family="sans-serif" '
            f'font-size="11" fill="#444444" text-anchor="end">{yv:.4g}</text>')
    for t in ticks:
        if np.isfinite(t) and x_lo <= t <= x_hi:
            parts.append(
                f'<line x1="{px(t):.1f}" y1="{MARGIN_T}" x2="{px(t):.1f}" '
                f'y2="{MARGIN_T + plot_h}" stroke="{TICK_COLOR}" stroke-width="1.5" '
                f'stroke-dasharray="4,3"/>')
    for k, (label, x, y) in enumerate(cleaned):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        parts.append(
            f'<text x="{WIDTH - MARGIN_R - 8}" y="{MARGIN_T + 16 + 16 * k}" '
            f'font-family="sans-serif" font-size="12" fill="{color}" '
            f'text-anchor="end">{escape(str(label))}</text>')
    if xlabel:
        parts.append(
            f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 2}" '
            f'font-family="sans-serif" font-size="11" fill="#444444" '
            f'text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        parts.append(
            f'<text x="14" y="{MARGIN_T + plot_h / 2:.1f}" font-family="sans-serif" '
            f'font-size="11" fill="#444444" text-anchor="middle" '
            f'transform="rotate(-90 14 {MARGIN_T + plot_h / 2:.1f})">{escape(ylabel)}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
