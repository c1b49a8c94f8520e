"""Minimal SVG emission for log-log covering plots (no plotting dependency)."""

from __future__ import annotations

import numpy as np

WIDTH, HEIGHT = 480, 360
MARGIN = 48


def _map(x, lo, hi, out_lo, out_hi):
    if hi == lo:
        return (out_lo + out_hi) / 2
    return out_lo + (x - lo) * (out_hi - out_lo) / (hi - lo)


def loglog_svg(profile) -> str:
    """Scatter of (k, log2 N) with the least-squares line and its slope."""
    ks = profile.ks()
    ys = profile.log2_counts()
    slope, intercept = np.polyfit(np.asarray(ks, dtype=np.float64), ys, 1)
    x_lo, x_hi = min(ks), max(ks)
    y_lo, y_hi = float(min(ys)), float(max(ys))
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def px(x):
        return _map(x, x_lo, x_hi, MARGIN, WIDTH - MARGIN)

    def py(y):
        return _map(y, y_lo, y_hi, HEIGHT - MARGIN, MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" '
        f'stroke="black"/>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-size="12">scale exponent k</text>',
        f'<text x="14" y="{HEIGHT // 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 14 {HEIGHT // 2})">log2 N</text>',
    ]
    for k in ks:
        parts.append(
            f'<text x="{px(k):.1f}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" '
            f'font-size="10">{k}</text>'
        )
    x1, y1 = px(x_lo), py(slope * x_lo + intercept)
    x2, y2 = px(x_hi), py(slope * x_hi + intercept)
    parts.append(
        f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
        f'stroke="#888" stroke-dasharray="4 3"/>'
    )
    for k, y in zip(ks, ys):
        parts.append(f'<circle cx="{px(k):.2f}" cy="{py(float(y)):.2f}" r="3" fill="#1a6"/>')
    parts.append(
        f'<text x="{WIDTH - MARGIN}" y="{MARGIN - 8}" text-anchor="end" '
        f'font-size="12">slope = {slope:.4f}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
