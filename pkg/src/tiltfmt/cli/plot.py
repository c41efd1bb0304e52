"""CSV and minimal SVG output for wall tasks."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from ..chern import INF
from ..numeric import render
from ..stability import Wall

WIDTH, HEIGHT, MARGIN = 640, 360, 40


def _fmt_slope(v) -> str:
    return "+inf" if v is INF else render(v)


def scan_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["b", "alpha", "nu_x", "nu_y", "side"])
    for b, a, nx, ny, side in rows:
        w.writerow([str(b), str(a), _fmt_slope(nx), _fmt_slope(ny), side])
    return buf.getvalue()


def grid(bmin: Fraction, bmax: Fraction, amax: Fraction, n: int):
    """``n`` values of ``b`` spanning ``[bmin, bmax]`` and ``n`` of ``alpha`` in ``(0, amax]``."""
    if n < 2:
        raise ValueError("grid needs at least 2 points per axis")
    bs = [bmin + (bmax - bmin) * Fraction(j, n - 1) for j in range(n)]
    alphas = [amax * Fraction(k + 1, n) for k in range(n)]
    return bs, alphas


def wall_svg(wall: Wall, bmin: Fraction, bmax: Fraction, amax: Fraction, title: str = "") -> str:
    bmin_f, bmax_f, amax_f = float(bmin), float(bmax), float(amax)
    sx = (WIDTH - 2 * MARGIN) / (bmax_f - bmin_f)
    sy = (HEIGHT - 2 * MARGIN) / amax_f

    def px(b):
        return MARGIN + (b - bmin_f) * sx

    def py(a):
        return HEIGHT - MARGIN - a * sy

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{py(0):.3f}" x2="{WIDTH - MARGIN}" y2="{py(0):.3f}" stroke="black"/>',
    ]
    if bmin_f <= 0 <= bmax_f:
        out.append(
            f'<line x1="{px(0):.3f}" y1="{py(0):.3f}" x2="{px(0):.3f}" y2="{MARGIN}" stroke="gray" stroke-dasharray="4 3"/>'
        )
    out.append(f'<text x="{WIDTH - MARGIN + 6}" y="{py(0) + 4:.3f}" font-size="12">b</text>')
    out.append(f'<text x="{MARGIN - 4}" y="{MARGIN - 8}" font-size="12">alpha</text>')
    out.append(f'<text x="{MARGIN}" y="{py(0) + 16:.3f}" font-size="10">{bmin}</text>')
    out.append(f'<text x="{WIDTH - MARGIN - 20}" y="{py(0) + 16:.3f}" font-size="10">{bmax}</text>')

    if wall.kind == "circle":
        c = float(wall.center_b)
        r = float(wall.radius_sq) ** 0.5
        x0, x1 = px(c - r), px(c + r)
        rx, ry = r * sx, r * sy
        out.append(
            f'<path d="M {x0:.3f} {py(0):.3f} A {rx:.3f} {ry:.3f} 0 0 1 {x1:.3f} {py(0):.3f}" '
            'fill="none" stroke="crimson" stroke-width="2"/>'
        )
        out.append(f'<circle cx="{px(c):.3f}" cy="{py(0):.3f}" r="3" fill="crimson"/>')
        label = f"center b={wall.center_b}, radius^2={wall.radius_sq}"
    elif wall.kind == "vertical_line":
        xl = px(float(wall.line_b))
        out.append(f'<line x1="{xl:.3f}" y1="{py(0):.3f}" x2="{xl:.3f}" y2="{MARGIN}" stroke="crimson" stroke-width="2"/>')
        label = f"b={wall.line_b}"
    else:
        label = wall.kind
    out.append(f'<text x="{MARGIN}" y="20" font-size="13">{_escape(title)} wall: {_escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
