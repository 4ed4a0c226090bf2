import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import convex_polygon, mismatches_outside_band, random_shape, seeds, star_polygon
from hausmid.boolean import symmetric_difference_area
from hausmid.geometry import Arc, Segment, circle
from hausmid.middle import s_alpha
from hausmid.oracle import grid_dilate, rasterize
from hausmid.region import ArcRegion, Face, Shape, area, component_count, dilate, is_convex

SQUARE = Shape.polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def disk(c, r):
    return ArcRegion((Face(outer=(circle(c, r),)),))


def annulus(r0, r1):
    return ArcRegion((Face(outer=(circle((0, 0), r1),), holes=((circle((0, 0), r0, ccw=False),),)),))


def test_self_crossing_loop_is_rejected():
    with pytest.raises(ValueError):
        Shape.polygon([(0, 0), (1, 1), (1, 0), (0, 1)]).to_region()
    # a reflex vertex touching nothing is fine
    assert area(Shape.polygon([(0, 0), (2, 0), (2, 2), (1, 0.5), (0, 2)]).to_region()) == pytest.approx(2.5)


def test_dilate_point_is_a_disk():
    R = dilate(Shape.point_set((0, 0)), 1.0)
    assert len(R.faces) == 1
    assert area(R) == pytest.approx(math.pi, rel=1e-12)


def test_dilate_square():
    assert area(dilate(SQUARE, 0.5)) == pytest.approx(3 + math.pi / 4, rel=1e-12)


def test_dilate_segment_is_a_stadium():
    assert area(dilate(Shape.polyline([(0, 0), (1, 0)]), 0.5)) == pytest.approx(1 + math.pi / 4, rel=1e-12)


def test_dilate_zero_radius_returns_region():
    R = dilate(SQUARE, 0.0)
    assert isinstance(R, ArcRegion) and area(R) == pytest.approx(1.0)


def test_dilate_closed_polyline_keeps_hole():
    ring = Shape.polyline([(0, 0), (4, 0), (4, 4), (0, 4), (0, 0)])
    R = dilate(ring, 0.5)
    assert len(R.faces) == 1 and len(R.faces[0].holes) == 1
    assert area(R) == pytest.approx(16 + 4 * 4 * 0.5 + math.pi / 4 - 3 * 3, rel=1e-9)


def test_area_examples():
    assert area(ArcRegion()) == 0.0
    assert area(disk((0, 0), 1)) == pytest.approx(math.pi)
    assert area(annulus(1, 2)) == pytest.approx(3 * math.pi)


def test_component_count_examples(oracle_values):
    assert component_count(ArcRegion()) == 0
    assert component_count(s_alpha(Shape.point_set((0, 0)), Shape.point_set((1, 0)), 0.5)) == 1
    from hausmid.fixtures import comb_pair

    c = comb_pair(4)
    assert component_count(s_alpha(c["A"], c["B"], 0.5)) == oracle_values["comb_middle_components"]["value"]["4x4"]


def test_is_convex_examples():
    assert is_convex(disk((0, 0), 1))
    assert not is_convex(annulus(1, 2))
    assert not is_convex(ArcRegion(disk((0, 0), 1).faces + disk((5, 0), 1).faces))
    assert not is_convex(Shape.polygon([(0, 0), (2, 0), (1, 0.5), (2, 2), (0, 2)]))


def test_convex_dilation_alternates_arcs_and_segments():
    rng = np.random.default_rng(5)
    pts = convex_polygon(rng, 7)
    R = dilate(Shape.polygon(pts), 0.2)
    assert is_convex(R)
    loop = R.faces[0].outer
    kinds = [isinstance(e, Arc) for e in loop]
    assert len(loop) == 14 and sum(kinds) == 7
    assert all(kinds[i] != kinds[(i + 1) % 14] for i in range(14))


@given(seeds)
@settings(max_examples=15)
def test_dilation_grows_monotonically(seed):
    rng = np.random.default_rng(seed)
    s = random_shape(rng, 12)
    r1, r2 = sorted(rng.uniform(0.01, 0.6, 2))
    a0, a1, a2 = area(s.to_region()), area(dilate(s, r1)), area(dilate(s, r2))
    assert a0 <= a1 + 1e-12 and a1 <= a2 + 1e-12


@given(seeds)
@settings(max_examples=10)
def test_dilation_semigroup(seed):
    rng = np.random.default_rng(seed)
    s = random_shape(rng, 10)
    r1, r2 = rng.uniform(0.02, 0.4, 2)
    twice = dilate(dilate(s, r1), r2)
    once = dilate(s, r1 + r2)
    perim = sum(e.length() for e in once.loop_edges)
    assert abs(symmetric_difference_area(twice, once)) <= 10 * once.tol * max(perim, 1.0)


@given(seeds)
@settings(max_examples=6)
def test_dilation_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    s = random_shape(rng, 10)
    r = float(rng.uniform(0.05, 0.4))
    h = 0.02
    R = dilate(s, r)
    ref = grid_dilate(rasterize(s, h), r)
    assert mismatches_outside_band(R, rasterize(R, h), ref, 2 * h) == 0


def test_star_polygon_dilation_is_one_face():
    rng = np.random.default_rng(2)
    R = dilate(Shape.polygon(star_polygon(rng, 15)), 0.05)
    assert component_count(R) == 1
    assert all(isinstance(e, (Segment, Arc)) for e in R.edges())
