"""Tiles of the Farey triangle.

A point (x, y) of the triangle T = {x + y > 1, 0 < x, y <= 1} generates a
chain by the floor iteration

    k_j = floor((1 + x_{j-2}) / x_{j-1}),   x_j = k_j x_{j-1} - x_{j-2}.

With x_j given by :func:`germ_forms`, ``k_j <= (1 + x_{j-2})/x_{j-1} < k_j + 1``
is the same as the pair ``x_j <= 1`` and ``x_{j-1} + x_j > 1``, so each tile is
a convex region cut out of T by two half-planes per valence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from gmpy2 import mpq

from .continuants import ValenceChain, as_values, germ_forms
from .exact import (
    ONE,
    ZERO,
    AffineForm,
    ConvexRegion,
    HalfPlane,
    Point,
    Relation,
    Status,
    canonical_vertices,
    clip,
    rational,
)

_X = AffineForm(ONE, ZERO)
_Y = AffineForm(ZERO, ONE)

TRIANGLE_CONSTRAINTS = (
    HalfPlane(AffineForm(ONE, ONE), Relation.GT, ONE),
    HalfPlane(_X, Relation.GT, ZERO),
    HalfPlane(_Y, Relation.GT, ZERO),
    HalfPlane(_X, Relation.LE, ONE),
    HalfPlane(_Y, Relation.LE, ONE),
)


@lru_cache(maxsize=None)
def farey_triangle() -> ConvexRegion:
    verts = canonical_vertices([Point(ZERO, ONE), Point(ONE, ZERO), Point(ONE, ONE)])
    return ConvexRegion(verts, TRIANGLE_CONSTRAINTS)


def in_triangle(p: Point) -> bool:
    return p[0] + p[1] > 1 and 0 < p[0] <= 1 and 0 < p[1] <= 1


def step_constraints(prev: AffineForm, cur: AffineForm) -> tuple[HalfPlane, HalfPlane]:
    """Half-planes pinning the valence whose new germ form is ``cur``."""
    return HalfPlane(cur, Relation.LE, ONE), HalfPlane(prev + cur, Relation.GT, ONE)


def tile_constraints(chain) -> list[HalfPlane]:
    vals = as_values(chain)
    if not vals:
        raise ValueError("tile constraints need a nonempty chain")
    forms = germ_forms(vals)
    out: list[HalfPlane] = []
    for j in range(1, len(vals) + 1):
        out.extend(step_constraints(forms[j], forms[j + 1]))
    return out


@dataclass(frozen=True)
class ConvexTile:
    chain: ValenceChain
    region: ConvexRegion
    forms: tuple[AffineForm, ...]

    @property
    def status(self) -> Status:
        return self.region.status

    @property
    def vertices(self) -> tuple[Point, ...]:
        return self.region.closure_vertices

    def contains(self, p: Point) -> bool:
        return self.region.contains(p)


def tile_of_chain(chain) -> ConvexTile:
    vals = as_values(chain)
    if not vals:
        raise ValueError("tile_of_chain needs a nonempty chain")
    region = farey_triangle()
    for h in tile_constraints(vals):
        region = clip(region, h)
    return ConvexTile(ValenceChain(vals), region, tuple(germ_forms(vals)))


def is_admissible_geometric(chain) -> bool:
    return tile_of_chain(chain).status.is_nonempty


def point_to_chain(p: Point, r: int) -> ValenceChain:
    if not in_triangle(p):
        raise ValueError(f"{p} is not inside the Farey triangle")
    prev, cur = rational(p[0]), rational(p[1])
    out = []
    for _ in range(r):
        k = int((1 + prev) // cur)
        prev, cur = cur, k * cur - prev
        out.append(k)
    return ValenceChain(out)


def valence_bracket(region: ConvexRegion, prev: AffineForm, cur: AffineForm,
                    cap: int) -> tuple[int, int, bool]:
    """Bounds (lo, hi, unbounded) on floor((1 + prev)/cur) over the closure.

    The ratio of two affine forms with a positive denominator is monotone
    along segments, so its extremes over a convex polygon sit at vertices.
    ``hi`` is clipped to ``cap``; ``unbounded`` reports a vertex where cur = 0.
    """
    lo: Optional[int] = None
    hi = 0
    unbounded = False
    for v in region.closure_vertices:
        den = cur(v)
        if den <= 0:
            unbounded = True
            continue
        k = int((1 + prev(v)) // den)
        lo = k if lo is None else min(lo, k)
        hi = max(hi, k)
    if unbounded:
        hi = cap
    if lo is None:
        lo = 1
    return max(lo, 1), min(hi, cap), unbounded


def extend_region(region: ConvexRegion, prev: AffineForm, cur: AffineForm,
                  k: int) -> tuple[ConvexRegion, AffineForm]:
    nxt = cur.scale(k) - prev
    le, gt = step_constraints(cur, nxt)
    return clip(clip(region, le), gt), nxt


def children(region: ConvexRegion, prev: AffineForm, cur: AffineForm,
             cap: int) -> Iterator[tuple[int, ConvexRegion, AffineForm]]:
    """Nonempty one-step refinements of ``region`` with valence <= cap."""
    lo, hi, _ = valence_bracket(region, prev, cur, cap)
    for k in range(lo, hi + 1):
        child, nxt = extend_region(region, prev, cur, k)
        if child.status.is_nonempty:
            yield k, child, nxt


def child_valences(chain, cap: int) -> list[int]:
    vals = as_values(chain)
    if vals:
        tile = tile_of_chain(vals)
        region, forms = tile.region, tile.forms
    else:
        region, forms = farey_triangle(), tuple(germ_forms(()))
    if region.is_empty:
        return []
    return [k for k, _, _ in children(region, forms[-2], forms[-1], cap)]


def pattern_chain(s: int, t: int, k: int) -> tuple[int, ...]:
    """(2,...,2,1, k, 1,2,...,2) with s entries before k and t after."""
    left = (2,) * (s - 1) + (1,) if s else ()
    right = (1,) + (2,) * (t - 1) if t else ()
    return left + (k,) + right


def proposition_vertices(s: int, t: int, k: int) -> list[Point]:
    """Closed-form quadrangle of the pattern chain for large k (independent of t)."""
    if s < 0 or t < 0 or k < 1:
        raise ValueError("need s, t >= 0 and k >= 1")
    F = mpq
    if s == 0:
        return [Point(F(k, k + 2), F(2, k + 2)), Point(ONE, F(2, k + 1)),
                Point(ONE, F(2, k)), Point(F(k - 1, k + 1), F(2, k + 1))]
    m = k - 2 * s
    return [Point(F(m, k + 2), F(m + 2, k + 2)), Point(F(m + 1, k + 1), F(m + 3, k + 1)),
            Point(F(m, k), F(m + 2, k)), Point(F(m - 1, k + 1), F(m + 1, k + 1))]
