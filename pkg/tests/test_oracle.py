import math

import numpy as np
import pytest

from hausmid import fixtures
from hausmid.geometry import circle
from hausmid.oracle import (Grid, default_pitch, grid_components, grid_dilate, grid_directed_hausdorff,
                            grid_hausdorff, grid_intersect, grid_union, rasterize)
from hausmid.region import ArcRegion, Face, Shape

H = 0.01
UNIT_DISK = ArcRegion((Face(outer=(circle((0, 0), 1),)),))


def test_unit_disk_area():
    assert rasterize(UNIT_DISK, H).area() == pytest.approx(math.pi, abs=0.05)


def test_polygon_area_converges():
    sq = Shape.polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    errs = [abs(rasterize(sq, h).area() - 1.0) for h in (0.02, 0.01, 0.005)]
    assert errs[2] < errs[0] and errs[2] < 0.025


def test_empty_and_point():
    assert rasterize(ArcRegion(), H).is_empty()
    assert rasterize(Shape.point_set((0.3, 0.7)), H).count() >= 1


def test_rasterize_rejects_bad_pitch():
    with pytest.raises(ValueError):
        rasterize(UNIT_DISK, 0.0)


def test_lattice_is_shared():
    g = rasterize(Shape.point_set((0.1231, -0.4562)), H)
    x, y = g.centers()[0]
    assert x / H == pytest.approx(round(x / H)) and y / H == pytest.approx(round(y / H))


def test_dilate_zero_is_identity():
    g = rasterize(UNIT_DISK, H)
    assert grid_dilate(g, 0.0) is g


def test_dilate_point_is_a_disk():
    g = grid_dilate(rasterize(Shape.point_set((0, 0)), H), 1.0)
    assert g.area() == pytest.approx(math.pi, abs=10 * H)


def test_dilate_semigroup():
    g = rasterize(Shape.polyline([(0, 0), (1, 0.3), (1.5, -0.2)]), H)
    twice = grid_dilate(grid_dilate(g, 0.2), 0.2)
    once = grid_dilate(g, 0.4)
    # twice must lie inside once, and once may exceed it only in a thin band
    assert grid_intersect(twice, once).count() == twice.count()
    band = grid_intersect(once, grid_dilate(twice, 1.5 * H))
    assert band.count() == once.count()


def test_dilate_rejects_negative_radius():
    with pytest.raises(ValueError):
        grid_dilate(rasterize(UNIT_DISK, H), -1.0)


def test_hausdorff_examples():
    g = rasterize(UNIT_DISK, H)
    assert grid_hausdorff(g, g) == 0.0
    a = Grid(0, 0, H, np.ones((1, 1), bool))
    b = Grid(0, 5, H, np.ones((1, 1), bool))
    assert grid_hausdorff(a, b) == pytest.approx(5 * H)
    with pytest.raises(ValueError):
        grid_hausdorff(a, Grid(0, 0, H, np.zeros((1, 1), bool)))


def test_hausdorff_is_directed():
    small = rasterize(Shape.point_set((0, 0)), H)
    big = rasterize(UNIT_DISK, H)
    assert grid_directed_hausdorff(small, big) == 0.0
    assert grid_directed_hausdorff(big, small) == pytest.approx(1.0, abs=2 * H)


def test_grids_of_different_pitch_are_rejected():
    with pytest.raises(ValueError):
        grid_union(rasterize(UNIT_DISK, H), rasterize(UNIT_DISK, 2 * H))


def test_components_examples():
    assert grid_components(Grid(0, 0, H, np.zeros((3, 3), bool))) == 0
    far = grid_union(rasterize(UNIT_DISK, H),
                     rasterize(ArcRegion((Face(outer=(circle((3, 0), 1),)),)), H))
    assert grid_components(far) == 2
    ring = ArcRegion((Face(outer=(circle((0, 0), 2),), holes=((circle((0, 0), 1, ccw=False),),)),))
    assert grid_components(rasterize(ring, H)) == 1


def test_diagonal_cells_are_connected():
    occ = np.eye(4, dtype=bool)
    assert grid_components(Grid(0, 0, H, occ)) == 1


@pytest.mark.parametrize("name", ["combs", "corner", "equilateral"])
def test_hausdorff_converges_when_halving_pitch(name):
    shapes = list(fixtures.load(name).values())
    A, B = shapes[0], shapes[1]
    h = 10 * default_pitch(A, B)
    coarse = grid_hausdorff(rasterize(A, h), rasterize(B, h))
    fine = grid_hausdorff(rasterize(A, h / 2), rasterize(B, h / 2))
    assert abs(coarse - fine) <= 2 * h


def test_default_pitch():
    assert default_pitch(Shape.polyline([(0, 0), (3, 4)])) == pytest.approx(5e-3)
