from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fareytiles.exact import (
    AffineForm,
    ConvexRegion,
    HalfPlane,
    Point,
    Relation,
    Status,
    affine_eval,
    clip,
    format_rational,
    rational,
    region_status,
)
from fareytiles.tiles import farey_triangle

P = Point.of
F = Fraction


def hp(a, b, c, rel, bound=0):
    return HalfPlane(AffineForm.of(a, b, c), rel, bound)


def as_fractions(vertices):
    return {(F(int(v.x.numerator), int(v.x.denominator)), F(int(v.y.numerator), int(v.y.denominator)))
            for v in vertices}


class TestAffineEval:
    def test_sum_of_coordinates(self):
        assert affine_eval(AffineForm.of(1, 1, 0), P("1/2", "2/3")) == rational("7/6")

    def test_constant_form(self):
        assert affine_eval(AffineForm.of(0, 0, 5), P("3/11", "-4")) == 5

    def test_vanishing(self):
        assert affine_eval(AffineForm.of(2, -1, 1), P(0, 1)) == 0


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        rational(0.5)


def test_format_rational_keeps_denominator():
    assert format_rational(3) == "3/1"
    assert format_rational(F(-6, 4)) == "-3/2"


class TestClip:
    def test_triangle_above_line(self):
        # y > (x+1)/2  <=>  2y - x > 1
        # oracle: x+y=1 meets 2y-x=1 at x=1/3; x=1 meets it at y=1
        region = clip(farey_triangle(), hp(-1, 2, 0, Relation.GT, 1))
        assert as_fractions(region.closure_vertices) == {(F(1, 3), F(2, 3)), (F(0), F(1)), (F(1), F(1))}
        assert region.status is Status.NONEMPTY

    def test_trivially_true_constraint(self):
        tri = farey_triangle()
        assert clip(tri, hp(0, 0, 0, Relation.LE, 1)).closure_vertices == tri.closure_vertices

    def test_missing_the_square(self):
        region = clip(farey_triangle(), hp(0, 1, 0, Relation.GT, 2))
        assert region.closure_vertices == ()
        assert region.status is Status.EMPTY

    def test_strictness_is_recorded(self):
        region = clip(farey_triangle(), hp(1, 0, 0, Relation.LT, "1/2"))
        assert region.constraints[-1].strict
        assert not region.contains(P("1/2", "3/4"))
        assert region.closure_contains(P("1/2", "3/4"))

    def test_vertices_are_ccw_from_lexicographic_minimum(self):
        vs = farey_triangle().closure_vertices
        assert vs[0] == min(vs)
        assert vs == (P(0, 1), P(1, 0), P(1, 1))


class TestRegionStatus:
    def test_triangle(self):
        assert region_status(farey_triangle()) is Status.NONEMPTY

    def test_segment_with_open_end(self):
        region = ConvexRegion.from_constraints([
            hp(1, 0, 0, Relation.LE, 0), hp(1, 0, 0, Relation.GE, 0),
            hp(0, 1, 0, Relation.GE, 0), hp(0, 1, 0, Relation.LE, 1),
            hp(1, 0, 0, Relation.GT, -1),
        ])
        assert set(region.closure_vertices) == {P(0, 0), P(0, 1)}
        assert region_status(region) is Status.DEGENERATE_NONEMPTY

    def test_contradictory_strictness(self):
        region = ConvexRegion.from_constraints([hp(1, 0, 0, Relation.LE, 0), hp(1, 0, 0, Relation.GT, 0)])
        assert region_status(region) is Status.EMPTY

    def test_point_excluded_by_strict_constraint(self):
        region = ConvexRegion.from_constraints([
            hp(1, 0, 0, Relation.GE, 0), hp(0, 1, 0, Relation.GE, 0),
            hp(1, 1, 0, Relation.LE, 0), hp(1, -1, 0, Relation.GT, 0),
        ])
        assert region.closure_vertices == (P(0, 0),)
        assert region_status(region) is Status.DEGENERATE_EMPTY

    def test_point_kept(self):
        region = ConvexRegion.from_constraints([
            hp(1, 0, 0, Relation.GE, 0), hp(0, 1, 0, Relation.GE, 0), hp(1, 1, 0, Relation.LE, 0),
        ])
        assert region_status(region) is Status.DEGENERATE_NONEMPTY


small = st.fractions(min_value=-3, max_value=3, max_denominator=6)
coef = st.integers(-4, 4)
relations = st.sampled_from(list(Relation))


@st.composite
def half_planes(draw):
    a, b = draw(coef), draw(coef)
    return HalfPlane(AffineForm.of(a, b, 0), draw(relations), draw(small))


@given(half_planes())
def test_clip_is_monotone(h):
    tri = farey_triangle()
    out = clip(tri, h)
    assert all(tri.closure_contains(v) for v in out.closure_vertices)
    assert all(h.closed_contains(v) for v in out.closure_vertices)


@given(half_planes(), half_planes())
def test_clip_order_independent(h1, h2):
    tri = farey_triangle()
    a = clip(clip(tri, h1), h2)
    b = clip(clip(tri, h2), h1)
    assert sorted(a.closure_vertices) == sorted(b.closure_vertices)
    assert a.status == b.status


def sample_grid(n=12):
    return [P(F(i, n), F(j, n)) for i in range(-n, 2 * n + 1) for j in range(-n, 2 * n + 1)]


GRID = sample_grid()


@given(st.lists(half_planes(), min_size=1, max_size=4))
def test_status_agrees_with_rational_sampling(hs):
    region = farey_triangle()
    for h in hs:
        region = clip(region, h)
    sampled = any(region.contains(p) for p in GRID)
    if sampled:
        assert region.status.is_nonempty
    if region.status is Status.NONEMPTY:
        # the vertex average lies in the interior, hence in the region
        vs = region.closure_vertices
        c = P(sum(v.x for v in vs) / len(vs), sum(v.y for v in vs) / len(vs))
        assert region.contains(c)
    elif region.status is Status.DEGENERATE_NONEMPTY:
        vs = region.closure_vertices
        w = vs[0] if len(vs) == 1 else P((vs[0].x + vs[1].x) / 2, (vs[0].y + vs[1].y) / 2)
        assert region.contains(w)


@given(st.fractions(), st.fractions())
def test_sums_are_exact(p, q):
    a, c = rational(p), rational(q)
    b, d = p.denominator, q.denominator
    v = (a + c) * (b * d)
    assert v.denominator == 1
