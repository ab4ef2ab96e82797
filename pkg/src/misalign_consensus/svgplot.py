"""Minimal native SVG writer for trajectory figures (no plotting library).

Draws one polyline per agent with a circle marker at the start position
and a triangle marker at the final position, plus labeled axes.
"""

from __future__ import annotations

import numpy as np

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)

WIDTH, HEIGHT = 640, 480
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 62, 20, 34, 46
MAX_POLYLINE_POINTS = 1200


def _bounds(values: np.ndarray) -> tuple[float, float]:
    lo, hi = float(values.min()), float(values.max())
    if hi - lo < 1e-12:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def trajectory_svg(states: np.ndarray, n: int, title: str = "") -> str:
    """Render recorded states (samples x 2n) as an SVG document string."""
    states = np.asarray(states, dtype=float)
    if states.ndim != 2 or states.shape[1] != 2 * n:
        raise ValueError(f"expected states of width {2 * n}")
    xs = states[:, 0::2]
    ys = states[:, 1::2]
    x_lo, x_hi = _bounds(xs)
    y_lo, y_hi = _bounds(ys)

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    if states.shape[0] > MAX_POLYLINE_POINTS:
        idx = np.linspace(0, states.shape[0] - 1, MAX_POLYLINE_POINTS).astype(int)
    else:
        idx = np.arange(states.shape[0])

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )

    # axes
    x0, y0 = MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{WIDTH - MARGIN_RIGHT}" y2="{y0}" '
        'stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN_TOP}" '
        'stroke="black" stroke-width="1"/>'
    )
    for t in np.linspace(x_lo, x_hi, 5):
        px = sx(t)
        parts.append(
            f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{y0 + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{t:.4g}</text>'
        )
    for t in np.linspace(y_lo, y_hi, 5):
        py = sy(t)
        parts.append(
            f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x0 - 8}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{t:.4g}</text>'
        )

    for agent in range(n):
        color = PALETTE[agent % len(PALETTE)]
        pts = " ".join(
            f"{sx(xs[k, agent]):.2f},{sy(ys[k, agent]):.2f}" for k in idx
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            'stroke-width="1.5"/>'
        )
        # start marker: circle
        cx, cy = sx(xs[0, agent]), sy(ys[0, agent])
        parts.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="5" fill="none" '
            f'stroke="{color}" stroke-width="1.8"/>'
        )
        # end marker: triangle
        tx, ty = sx(xs[-1, agent]), sy(ys[-1, agent])
        tri = (
            f"{tx:.2f},{ty - 6:.2f} {tx - 5.2:.2f},{ty + 4:.2f} "
            f"{tx + 5.2:.2f},{ty + 4:.2f}"
        )
        parts.append(f'<polygon points="{tri}" fill="{color}"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
