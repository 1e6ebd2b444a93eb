"""Exact rational geometry in the plane.

Scalars are GMP rationals (``gmpy2.mpq``): always reduced, positive
denominator, arbitrary precision, so no predicate ever rounds.  A
:class:`ConvexRegion` keeps the closed polygon obtained by intersecting the
closed versions of its constraints, together with the constraints
themselves, so that open edges can be honoured by a final witness test
instead of by open-polygon arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from gmpy2 import mpq

Rational = mpq
ZERO = mpq(0)
ONE = mpq(1)


def rational(value) -> mpq:
    """Coerce ints, Fractions, mpq and ``"num/den"`` strings to an exact rational."""
    if type(value) is mpq:
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    return mpq(value)


def format_rational(value) -> str:
    """``"num/den"`` in lowest terms (denominator written even when 1)."""
    v = rational(value)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(text: str) -> mpq:
    return rational(text)


class Point(NamedTuple):
    x: mpq
    y: mpq

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(rational(x), rational(y))


class AffineForm(NamedTuple):
    """The affine function ``a*x + b*y + c``."""

    a: mpq
    b: mpq
    c: mpq = ZERO

    @classmethod
    def of(cls, a, b, c=0) -> "AffineForm":
        return cls(rational(a), rational(b), rational(c))

    def __call__(self, p: Point) -> mpq:
        return self.a * p[0] + self.b * p[1] + self.c

    def __add__(self, other: "AffineForm") -> "AffineForm":  # type: ignore[override]
        return AffineForm(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "AffineForm":
        return AffineForm(-self.a, -self.b, -self.c)

    def scale(self, k) -> "AffineForm":
        return AffineForm(k * self.a, k * self.b, k * self.c)

    def is_constant(self) -> bool:
        return self.a == 0 and self.b == 0


def affine_eval(form: AffineForm, p: Point) -> mpq:
    return form(p)


class Relation(str, enum.Enum):
    LE = "<="
    LT = "<"
    GE = ">="
    GT = ">"

    @property
    def strict(self) -> bool:
        return self in (Relation.LT, Relation.GT)


@dataclass(frozen=True)
class HalfPlane:
    """``form(p) <relation> bound``."""

    form: AffineForm
    relation: Relation
    bound: mpq = ZERO

    def __post_init__(self):
        object.__setattr__(self, "relation", Relation(self.relation))
        object.__setattr__(self, "bound", rational(self.bound))

    @property
    def strict(self) -> bool:
        return self.relation.strict

    @cached_property
    def oriented(self) -> AffineForm:
        # normalised so that the constraint reads oriented(p) <= 0 (or < 0)
        g = AffineForm(self.form.a, self.form.b, self.form.c - self.bound)
        if self.relation in (Relation.GE, Relation.GT):
            g = -g
        return g

    def slack(self, p: Point) -> mpq:
        return self.oriented(p)

    def contains(self, p: Point) -> bool:
        v = self.oriented(p)
        return v < 0 if self.strict else v <= 0

    def closed_contains(self, p: Point) -> bool:
        return self.oriented(p) <= 0

    def __str__(self):
        a, b, c = self.form
        return f"{a}*x + {b}*y + {c} {self.relation.value} {self.bound}"


class Status(str, enum.Enum):
    NONEMPTY = "nonempty-with-interior"
    DEGENERATE_NONEMPTY = "degenerate-nonempty"
    DEGENERATE_EMPTY = "degenerate-empty"
    EMPTY = "empty"

    @property
    def is_nonempty(self) -> bool:
        return self in (Status.NONEMPTY, Status.DEGENERATE_NONEMPTY)


def cross(o: Point, a: Point, b: Point) -> mpq:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def twice_area(vertices: Sequence[Point]) -> mpq:
    n = len(vertices)
    s = ZERO
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


def canonical_vertices(points: Iterable[Point]) -> tuple[Point, ...]:
    """Canonical form of a convex cycle: CCW, no repeats, no collinear
    middles, starting at the lexicographically smallest vertex.

    The input must already be a convex polygon traversed in a consistent
    direction (possibly with duplicate or collinear vertices).
    """
    pts: list[Point] = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) <= 1:
        return tuple(pts)
    if len(pts) >= 3 and twice_area(pts) < 0:
        pts.reverse()
    if len(pts) >= 3 and twice_area(pts) == 0:
        return (min(pts), max(pts))
    if len(pts) == 2:
        return tuple(sorted(pts))
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            if cross(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) == 0:
                del pts[i]
                changed = True
                break
    if len(pts) == 3 and cross(pts[0], pts[1], pts[2]) == 0:
        return (min(pts), max(pts))
    start = pts.index(min(pts))
    return tuple(pts[start:] + pts[:start])


def clip_vertices(vertices: Sequence[Point], h: HalfPlane) -> tuple[Point, ...]:
    """Sutherland-Hodgman against the closed version of ``h``."""
    g = h.oriented
    n = len(vertices)
    if n == 0:
        return ()
    if g.is_constant() and h.strict and g.c >= 0:
        # "c < 0" with c >= 0 holds nowhere, not even on a boundary
        return ()
    values = [g(p) for p in vertices]
    if all(v <= 0 for v in values):
        return tuple(vertices)
    if all(v > 0 for v in values):
        return ()
    if n == 1:
        return tuple(vertices)
    out: list[Point] = []
    for i in range(n):
        p, vp = vertices[i], values[i]
        q, vq = vertices[(i + 1) % n], values[(i + 1) % n]
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = vp / (vp - vq)
            out.append(Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return canonical_vertices(out)


def _opposed(h1: HalfPlane, h2: HalfPlane) -> bool:
    """True when the closed halves of h1 and h2 meet only on a common line."""
    g1, g2 = h1.oriented, h2.oriented
    if g1.is_constant() or g2.is_constant():
        return False
    # g1 = -lam * g2 with lam > 0
    if g1.a * g2.b != g1.b * g2.a:
        return False
    lam = -(g1.a / g2.a) if g2.a != 0 else -(g1.b / g2.b)
    return lam > 0 and g1.c == -lam * g2.c


@dataclass(frozen=True)
class ConvexRegion:
    """Intersection of half-planes, stored as its closure polygon plus the
    constraints that cut it (strictness included)."""

    closure_vertices: tuple[Point, ...]
    constraints: tuple[HalfPlane, ...] = field(default=())

    @classmethod
    def from_constraints(cls, constraints: Iterable[HalfPlane], window=2**32) -> "ConvexRegion":
        """Build a region by clipping the square ``[-window, window]^2``.

        The window stands in for the whole plane, so it must contain every
        bounded region of interest.
        """
        w = rational(window)
        box = ConvexRegion(canonical_vertices([Point(-w, -w), Point(w, -w), Point(w, w), Point(-w, w)]))
        region = box
        for h in constraints:
            region = clip(region, h)
        return region

    @cached_property
    def area(self) -> mpq:
        if len(self.closure_vertices) < 3:
            return ZERO
        return twice_area(self.closure_vertices) / 2

    @cached_property
    def status(self) -> Status:
        return region_status(self)

    @property
    def emptiness_flag(self) -> Status:
        return self.status

    @property
    def is_empty(self) -> bool:
        return not self.status.is_nonempty

    def contains(self, p: Point) -> bool:
        return all(h.contains(p) for h in self.constraints) and self.closure_contains(p)

    def closure_contains(self, p: Point) -> bool:
        vs = self.closure_vertices
        n = len(vs)
        if n == 0:
            return False
        if n == 1:
            return p == vs[0]
        if n == 2:
            a, b = vs
            return cross(a, b, p) == 0 and min(a, b) <= p <= max(a, b)
        return all(cross(vs[i], vs[(i + 1) % n], p) >= 0 for i in range(n))


def clip(region: ConvexRegion, h: HalfPlane) -> ConvexRegion:
    return ConvexRegion(clip_vertices(region.closure_vertices, h), region.constraints + (h,))


def region_status(region: ConvexRegion) -> Status:
    vs = region.closure_vertices
    if not vs:
        return Status.EMPTY
    if len(vs) >= 3:
        return Status.NONEMPTY
    if len(vs) == 1:
        witness = vs[0]
    else:
        a, b = vs
        witness = Point((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    strict = [h for h in region.constraints if h.strict]
    if all(h.contains(witness) for h in strict):
        return Status.DEGENERATE_NONEMPTY
    # a strict constraint directly opposed to another one on the same line
    # makes the constraint set itself contradictory
    for h in strict:
        if all(h.oriented(v) == 0 for v in vs):
            if any(other is not h and _opposed(h, other) for other in region.constraints):
                return Status.EMPTY
    return Status.DEGENERATE_EMPTY
