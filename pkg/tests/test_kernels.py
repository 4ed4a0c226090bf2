import numpy as np
import pytest

from hausmid import kernels
from hausmid.geometry import feature_rows, parity_rows
from hausmid.region import Shape, dilate

compiled = pytest.importorskip("hausmid._ckernels")
from hausmid import _pykernels as pure  # noqa: E402


@pytest.fixture(scope="module")
def tables():
    R = dilate(Shape.polygon([(0, 0), (2, 0), (2, 1), (1, 0.4), (0, 1)]), 0.3)
    R = R.to_region() if hasattr(R, "to_region") else R
    F = feature_rows(R.edges(), [(3.0, 3.0)])
    P = parity_rows(R.loop_edges)
    return F, P


def test_backend_selected_at_import():
    assert kernels.USING_COMPILED == (kernels.min_dist is compiled.min_dist)


def test_backends_agree(tables):
    F, P = tables
    rng = np.random.default_rng(0)
    pts = rng.uniform(-1, 4, (300, 2))
    d1, i1 = compiled.min_dist_many(pts, F)
    d2, i2 = pure.min_dist_many(pts, F)
    assert np.allclose(d1, d2, atol=1e-14)
    assert np.array_equal(compiled.inside_many(pts, P), pure.inside_many(pts, P))
    for x, y in pts[:40]:
        assert compiled.segment_ub(x, y, x + 0.1, y + 0.05, F) == pytest.approx(
            pure.segment_ub(x, y, x + 0.1, y + 0.05, F), abs=1e-12)
        assert compiled.arc_ub(x, y, 0.3, 0.2, 1.0, F) == pytest.approx(pure.arc_ub(x, y, 0.3, 0.2, 1.0, F), abs=1e-12)
        c, p = compiled.cell_bounds(x, y, 0.07, F), pure.cell_bounds(x, y, 0.07, F)
        assert c[0] == pytest.approx(p[0], abs=1e-12) and c[1] == p[1]
        assert np.allclose(compiled.feature_dists(x, y, F), pure.feature_dists(x, y, F), atol=1e-14)


@pytest.mark.parametrize("mod", [compiled, pure], ids=["compiled", "numpy"])
def test_upper_bounds_dominate_samples(tables, mod):
    F, _ = tables
    rng = np.random.default_rng(1)
    for _ in range(30):
        ax, ay, bx, by = rng.uniform(-1, 4, 4)
        ub = mod.segment_ub(ax, ay, bx, by, F)
        t = np.linspace(0, 1, 201)[:, None]
        d, _ = mod.min_dist_many(np.column_stack([ax + t[:, 0] * (bx - ax), ay + t[:, 0] * (by - ay)]), F)
        assert d.max() <= ub + 1e-12
        x, y, h = *rng.uniform(-1, 4, 2), rng.uniform(0.01, 0.5)
        ub, _, _ = mod.cell_bounds(x, y, h, F)
        g = rng.uniform(-h, h, (200, 2)) + (x, y)
        assert mod.min_dist_many(g, F)[0].max() <= ub + 1e-12
