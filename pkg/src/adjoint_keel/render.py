"""SVG rendering of polygon adjoint chains.

One lattice unit is 32 px; lattice points are dots, chain members are
drawn in nesting order with strokes darkening toward the terminal
member.  Output is a deterministic string.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .polygon import PolygonChain, RationalPolygon, Shape

UNIT = 32
MARGIN = 1
DOT_RADIUS = 2.5


def _shade(index: int, total: int) -> str:
    if total <= 1:
        level = 0
    else:
        level = int(160 * index / (total - 1))
    value = 176 - level
    return f"#{value:02x}{value:02x}{value:02x}"


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, x_lo, y_lo, x_hi, y_hi):
        self.x_lo, self.y_lo = x_lo, y_lo
        self.width = (x_hi - x_lo + 2 * MARGIN) * UNIT
        self.height = (y_hi - y_lo + 2 * MARGIN) * UNIT
        self.y_hi = y_hi

    def to_px(self, x: Fraction, y: Fraction) -> tuple[float, float]:
        px = (float(x) - self.x_lo + MARGIN) * UNIT
        py = (self.y_hi - float(y) + MARGIN) * UNIT
        return px, py


def render_chain_svg(chain: PolygonChain) -> str:
    """SVG document for the members of a polygon adjoint chain."""
    outer = chain.members[0]
    xs = [v[0] for v in outer.vertices]
    ys = [v[1] for v in outer.vertices]
    canvas = _Canvas(
        math.floor(min(xs)), math.floor(min(ys)), math.ceil(max(xs)), math.ceil(max(ys))
    )
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{canvas.width}" '
        f'height="{canvas.height}" viewBox="0 0 {canvas.width} {canvas.height}">',
        f'<rect width="{canvas.width}" height="{canvas.height}" fill="white"/>',
    ]
    for gx in range(math.floor(min(xs)), math.ceil(max(xs)) + 1):
        for gy in range(math.floor(min(ys)), math.ceil(max(ys)) + 1):
            px, py = canvas.to_px(Fraction(gx), Fraction(gy))
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{DOT_RADIUS}" fill="#c8c8c8"/>'
            )
    total = len(chain.members)
    for idx, member in enumerate(chain.members):
        parts.append(_render_member(member, canvas, _shade(idx, total)))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _render_member(member: RationalPolygon, canvas: _Canvas, stroke: str) -> str:
    if member.shape is Shape.EMPTY:
        return "<!-- empty member -->"
    pts = [canvas.to_px(x, y) for x, y in member.vertices]
    if member.shape is Shape.POINT:
        (px, py) = pts[0]
        return f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" fill="{stroke}"/>'
    if member.shape is Shape.SEGMENT:
        (x1, y1), (x2, y2) = pts
        return (
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="2.5"/>'
        )
    path = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
    return f'<polygon points="{path}" fill="none" stroke="{stroke}" stroke-width="2.5"/>'
