"""Static SVG figures: polygon filmstrips and support-value profiles.

Every emitted frame contributes exactly one <polygon> (filmstrips) or one
<polyline> (profiles); everything else is drawn with rect/line/text.
"""

from __future__ import annotations

import numpy as np

CELL = 180
MARGIN = 24


def _color(i: int, total: int) -> str:
    frac = i / max(total - 1, 1)
    shade = int(40 + 160 * frac)
    return f"rgb({shade},{int(60 + 60 * frac)},{255 - shade})"


def polygon_filmstrip(frames, path, title: str = "") -> None:
    """Write one square cell per (t, polygon) frame, all on a shared scale."""
    frames = list(frames)
    pts = np.vstack([p.vertices for _, p in frames])
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = max(float(np.max(hi - lo)), 1e-9)
    pad = 0.08 * span
    lo = lo - pad
    span = span + 2 * pad

    cols = min(len(frames), 6)
    rows = (len(frames) + cols - 1) // cols
    width = MARGIN + cols * (CELL + MARGIN)
    height = MARGIN + 20 + rows * (CELL + MARGIN + 16)

    def to_cell(xy, cx, cy):
        x = cx + (xy[0] - lo[0]) / span * CELL
        y = cy + CELL - (xy[1] - lo[1]) / span * CELL
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width / 2:.1f}" y="16" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{title}</text>'
        )
    for i, (t, poly) in enumerate(frames):
        cx = MARGIN + (i % cols) * (CELL + MARGIN)
        cy = MARGIN + 20 + (i // cols) * (CELL + MARGIN + 16)
        parts.append(
            f'<rect x="{cx}" y="{cy}" width="{CELL}" height="{CELL}" '
            f'fill="none" stroke="#cccccc"/>'
        )
        coords = " ".join(
            f"{x:.2f},{y:.2f}"
            for x, y in (to_cell(v, cx, cy) for v in poly.vertices)
        )
        parts.append(
            f'<polygon points="{coords}" fill="none" '
            f'stroke="{_color(i, len(frames))}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{cx + CELL / 2:.1f}" y="{cy + CELL + 13:.1f}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="10">'
            f"t = {t:g}</text>"
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))


def support_profiles(frames, angles, path, title: str = "") -> None:
    """Overlay one polyline per (t, values) frame: value against angle."""
    frames = [(t, np.asarray(getattr(v, "values", v), dtype=float)) for t, v in frames]
    width, height = 560, 340
    plot_w, plot_h = width - 2 * MARGIN - 40, height - 2 * MARGIN - 20
    x0, y0 = MARGIN + 40, MARGIN + 10
    vmin = min(float(v.min()) for _, v in frames)
    vmax = max(float(v.max()) for _, v in frames)
    if vmax - vmin < 1e-12:
        vmax = vmin + 1.0
    amax = float(angles[-1])

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{x0}" y="{y0}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#cccccc"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width / 2:.1f}" y="16" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{title}</text>'
        )
    if vmin < 0 < vmax:
        yz = y0 + plot_h - (0 - vmin) / (vmax - vmin) * plot_h
        parts.append(
            f'<line x1="{x0}" y1="{yz:.1f}" x2="{x0 + plot_w}" y2="{yz:.1f}" '
            f'stroke="#eeeeee"/>'
        )
    for i, (t, vals) in enumerate(frames):
        coords = " ".join(
            f"{x0 + a / amax * plot_w:.2f},"
            f"{y0 + plot_h - (v - vmin) / (vmax - vmin) * plot_h:.2f}"
            for a, v in zip(angles, vals)
        )
        parts.append(
            f'<polyline points="{coords}" fill="none" '
            f'stroke="{_color(i, len(frames))}" stroke-width="1.2"/>'
        )
    parts.append(
        f'<text x="{x0 + plot_w / 2:.1f}" y="{height - 6}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="10">direction angle</text>'
    )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))
