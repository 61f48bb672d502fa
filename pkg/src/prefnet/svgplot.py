"""Minimal deterministic SVG renderer for overlaid density histograms.

Hand-rolled on purpose: output bytes depend only on the data, so pipeline
reruns stay byte-identical. Styling is limited to labeled axes, step
outlines and translucent error bands.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

WIDTH, HEIGHT = 820.0, 520.0
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70.0, 30.0, 50.0, 60.0

PALETTE = ["#c0392b", "#2471a3", "#7f8c8d", "#1e8449", "#8e44ad", "#b7950b"]


def _fmt(x: float) -> str:
    return f"{x:.3f}"


class HistSeries:
    def __init__(
        self,
        label: str,
        edges: Sequence[float],
        densities: Sequence[float],
        band_low: Optional[Sequence[float]] = None,
        band_high: Optional[Sequence[float]] = None,
    ):
        self.label = label
        self.edges = list(edges)
        self.densities = list(densities)
        self.band_low = list(band_low) if band_low is not None else None
        self.band_high = list(band_high) if band_high is not None else None


def render_histograms(
    path,
    series: list[HistSeries],
    title: str,
    x_label: str,
    y_label: str = "density",
    provenance: Optional[str] = None,
) -> None:
    x0, x1 = 0.0, 1.0
    y_top = 0.0
    for s in series:
        y_top = max(y_top, max(s.densities, default=0.0))
        if s.band_high:
            y_top = max(y_top, max(s.band_high))
    y_top = y_top * 1.08 if y_top > 0 else 1.0

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x: float) -> float:
        return MARGIN_L + (x - x0) / (x1 - x0) * plot_w

    def py(y: float) -> float:
        return MARGIN_T + plot_h - y / y_top * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" height="{HEIGHT:.0f}" '
        f'viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">',
    ]
    if provenance:
        out.append(f"<!-- {provenance} -->")
    out += [
        f'<rect width="{WIDTH:.0f}" height="{HEIGHT:.0f}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.0f}" y="28" text-anchor="middle" '
        f'font-family="sans-serif" font-size="18">{title}</text>',
    ]

    # axes and ticks
    out.append(
        f'<line x1="{_fmt(MARGIN_L)}" y1="{_fmt(MARGIN_T + plot_h)}" '
        f'x2="{_fmt(MARGIN_L + plot_w)}" y2="{_fmt(MARGIN_T + plot_h)}" stroke="#000"/>'
    )
    out.append(
        f'<line x1="{_fmt(MARGIN_L)}" y1="{_fmt(MARGIN_T)}" '
        f'x2="{_fmt(MARGIN_L)}" y2="{_fmt(MARGIN_T + plot_h)}" stroke="#000"/>'
    )
    for k in range(6):
        xv = x0 + k * (x1 - x0) / 5
        out.append(
            f'<line x1="{_fmt(px(xv))}" y1="{_fmt(MARGIN_T + plot_h)}" '
            f'x2="{_fmt(px(xv))}" y2="{_fmt(MARGIN_T + plot_h + 6)}" stroke="#000"/>'
        )
        out.append(
            f'<text x="{_fmt(px(xv))}" y="{_fmt(MARGIN_T + plot_h + 22)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{xv:.1f}</text>'
        )
    for k in range(6):
        yv = k * y_top / 5
        out.append(
            f'<line x1="{_fmt(MARGIN_L - 6)}" y1="{_fmt(py(yv))}" '
            f'x2="{_fmt(MARGIN_L)}" y2="{_fmt(py(yv))}" stroke="#000"/>'
        )
        out.append(
            f'<text x="{_fmt(MARGIN_L - 10)}" y="{_fmt(py(yv) + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{yv:.2f}</text>'
        )
    out.append(
        f'<text x="{_fmt(MARGIN_L + plot_w / 2)}" y="{_fmt(HEIGHT - 16)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{x_label}</text>'
    )
    out.append(
        f'<text x="20" y="{_fmt(MARGIN_T + plot_h / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 20 {_fmt(MARGIN_T + plot_h / 2)})">{y_label}</text>'
    )

    for idx, s in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        if s.band_low and s.band_high:
            pts = []
            for b in range(len(s.band_high)):
                pts.append(f"{_fmt(px(s.edges[b]))},{_fmt(py(s.band_high[b]))}")
                pts.append(f"{_fmt(px(s.edges[b + 1]))},{_fmt(py(s.band_high[b]))}")
            for b in reversed(range(len(s.band_low))):
                pts.append(f"{_fmt(px(s.edges[b + 1]))},{_fmt(py(s.band_low[b]))}")
                pts.append(f"{_fmt(px(s.edges[b]))},{_fmt(py(s.band_low[b]))}")
            out.append(
                f'<polygon points="{" ".join(pts)}" fill="{color}" fill-opacity="0.22" stroke="none"/>'
            )
        pts = [f"{_fmt(px(s.edges[0]))},{_fmt(py(0.0))}"]
        for b, d in enumerate(s.densities):
            pts.append(f"{_fmt(px(s.edges[b]))},{_fmt(py(d))}")
            pts.append(f"{_fmt(px(s.edges[b + 1]))},{_fmt(py(d))}")
        pts.append(f"{_fmt(px(s.edges[-1]))},{_fmt(py(0.0))}")
        out.append(
            f'<polyline points="{" ".join(pts)}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        ly = MARGIN_T + 12 + 20 * idx
        lx = MARGIN_L + plot_w - 150
        out.append(
            f'<rect x="{_fmt(lx)}" y="{_fmt(ly - 9)}" width="14" height="10" fill="{color}"/>'
        )
        out.append(
            f'<text x="{_fmt(lx + 20)}" y="{_fmt(ly)}" font-family="sans-serif" '
            f'font-size="13">{s.label}</text>'
        )

    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8", newline="\n")
