import math

import numpy as np
import pytest
from hypothesis import given

from conftest import random_shape, seeds
from hausmid.boolean import region_contains_shape
from hausmid.fixtures import comb_pair, corner_pair
from hausmid.geometry import circle
from hausmid.hausdorff import default_eps, directed_hausdorff, hausdorff, hausdorff_pair
from hausmid.oracle import grid_hausdorff, rasterize
from hausmid.region import ArcRegion, Face, Shape, as_region, dilate

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
H = 0.01


def test_identity_is_zero():
    s = Shape.polygon(SQUARE)
    assert hausdorff(s, s).value == pytest.approx(0.0, abs=1e-9)


def test_two_points():
    r = hausdorff(Shape.point_set((0, 0)), Shape.point_set((3, 4)))
    assert r.value == pytest.approx(5.0, abs=r.precision)


def test_translated_square():
    A = Shape.polygon(SQUARE)
    B = Shape.polygon([(x + 0.3, y) for x, y in SQUARE])
    assert hausdorff(A, B).value == pytest.approx(0.3, abs=1e-6)


def test_point_against_circle():
    ring = ArcRegion((Face(wire=(circle((0, 0), 1),)),))
    ab, ba = hausdorff_pair(Shape.point_set((0, 0)), ring)
    assert ab.value == pytest.approx(1.0, abs=1e-6)
    assert ba.value == pytest.approx(1.0, abs=1e-6)


def test_point_inside_disk_is_one_sided():
    disk = ArcRegion((Face(outer=(circle((0, 0), 1),)),))
    ab, ba = hausdorff_pair(Shape.point_set((0, 0)), disk)
    assert ab.value == pytest.approx(0.0, abs=1e-9)
    assert ba.value == pytest.approx(1.0, abs=1e-6)


def test_corner_directed(oracle_values):
    c = corner_pair()
    r = directed_hausdorff(c["A"], c["B1"])
    assert r.value == pytest.approx(oracle_values["corner_directed_A_B1"]["value"], abs=1e-6)
    assert directed_hausdorff(c["B1"], c["A"]).value == pytest.approx(0.0, abs=1e-9)


def test_comb_normalizer(oracle_values):
    ref = oracle_values["comb4_d"]
    A, B = comb_pair(4).values()
    assert hausdorff(A, B).value == pytest.approx(ref["value"], abs=2 * ref["h"])
    assert hausdorff(A, B).value == pytest.approx(0.5, abs=1e-6)


def test_witness_attains_value():
    A = Shape.polygon(SQUARE)
    B = Shape.point_set((0.5, 0.5))
    r = directed_hausdorff(A, B)
    assert math.dist(r.witness, (0.5, 0.5)) == pytest.approx(r.value, abs=r.precision)


def test_precision_respects_eps():
    A, B = Shape.polygon(SQUARE), Shape.point_set((2, 2))
    for eps in (1e-2, 1e-5):
        assert directed_hausdorff(A, B, eps).precision <= eps


def test_empty_input_raises():
    with pytest.raises(ValueError):
        hausdorff(ArcRegion(), Shape.point_set((0, 0)))
    with pytest.raises(ValueError):
        directed_hausdorff(Shape.point_set((0, 0)), ArcRegion())
    with pytest.raises(ValueError):
        directed_hausdorff(Shape.point_set((0, 0)), Shape.point_set((1, 0)), eps=0.0)


def _two(seed):
    rng = np.random.default_rng(seed)
    return random_shape(rng, 10), random_shape(rng, 10)


@given(seeds)
def test_symmetric(seed):
    A, B = _two(seed)
    ab, ba = hausdorff(A, B), hausdorff(B, A)
    assert ab.value == pytest.approx(ba.value, abs=ab.precision + ba.precision)


@given(seeds)
def test_triangle_inequality(seed):
    rng = np.random.default_rng(seed)
    A, B, C = (random_shape(rng, 8) for _ in range(3))
    ab, bc, ac = hausdorff(A, B), hausdorff(B, C), hausdorff(A, C)
    slack = ab.precision + bc.precision + ac.precision
    assert ac.value <= ab.value + bc.value + slack


@given(seeds)
def test_directed_zero_iff_contained(seed):
    rng = np.random.default_rng(seed)
    A = random_shape(rng, 10)
    r = float(rng.uniform(0.01, 0.3))
    X = dilate(A, r)
    eps = default_eps(as_region(A), X)
    # A lies inside its own dilation, and the dilation reaches r beyond A
    assert bool(region_contains_shape(X, A))
    assert directed_hausdorff(A, X, eps).value <= eps
    assert directed_hausdorff(X, A, eps).value == pytest.approx(r, abs=2 * eps)


@given(seeds)
def test_agrees_with_oracle(seed):
    A, B = _two(seed)
    r = hausdorff(A, B)
    g = grid_hausdorff(rasterize(A, H), rasterize(B, H))
    assert abs(r.value - g) <= r.precision + 2 * H
