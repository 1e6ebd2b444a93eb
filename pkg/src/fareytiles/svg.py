"""Static SVG figures of a tessellation.

Coordinates are scaled exactly and only then rounded to 9 significant
digits (half-even), so the same tiles always give the same bytes.
"""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Context, Decimal
from typing import Sequence

from .exact import Point, rational
from .tiles import ConvexTile, farey_triangle

_CTX = Context(prec=9, rounding=ROUND_HALF_EVEN)

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)


def fmt(value) -> str:
    v = rational(value)
    d = _CTX.divide(Decimal(int(v.numerator)), Decimal(int(v.denominator)))
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def to_viewport(p: Point, size: int) -> tuple[str, str]:
    # y axis flipped so that (1, 1) lands top-right
    return fmt(p[0] * size), fmt((1 - p[1]) * size)


def path_data(vertices: Sequence[Point], size: int) -> str:
    pts = [" ".join(to_viewport(v, size)) for v in vertices]
    if not pts:
        return ""
    return "M " + " L ".join(pts) + " Z"


def fill_for(k: int) -> str:
    return PALETTE[(k - 1) % len(PALETTE)]


def render_svg(tiles: Sequence[ConvexTile], viewport: int = 800) -> str:
    if viewport < 1:
        raise ValueError("viewport must be a positive number of pixels")
    n = int(viewport)
    stroke = fmt(rational(n) / 800)
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{n}" height="{n}" viewBox="0 0 {n} {n}">',
    ]
    for tile in tiles:
        ks = tile.chain.values
        lines.append(
            f'<path class="tile" id="tile-{"-".join(map(str, ks))}" '
            f'd="{path_data(tile.vertices, n)}" fill="{fill_for(ks[-1])}" '
            f'stroke="#222222" stroke-width="{stroke}"/>'
        )
    outline = path_data(farey_triangle().closure_vertices, n)
    lines.append(f'<path class="outline" d="{outline}" fill="none" '
                 f'stroke="#000000" stroke-width="{fmt(rational(2 * n) / 800)}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
