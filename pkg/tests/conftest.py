import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hausmid.region import Shape

settings.register_profile("hausmid", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("hausmid")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def oracle_values():
    return json.loads((DATA / "oracle_values.json").read_text())


def star_polygon(rng, n, center=(0.0, 0.0), radius=1.0):
    """Simple polygon: sorted angles with random radii around ``center``.
    Angle gaps of pi or more would let an edge pass behind the centre and
    cross another, so those draws are rejected."""
    while True:
        a = np.sort(rng.uniform(0, 2 * math.pi, n))
        if np.diff(a, append=a[0] + 2 * math.pi).max() < math.pi:
            break
    r = rng.uniform(0.5 * radius, radius, n)
    return [(center[0] + ri * math.cos(ai), center[1] + ri * math.sin(ai)) for ai, ri in zip(a, r)]


def convex_polygon(rng, n, center=(0.0, 0.0), radius=1.0):
    a = np.sort(rng.uniform(0, 2 * math.pi, n))
    return [(center[0] + radius * math.cos(t), center[1] + radius * math.sin(t)) for t in a]


def random_polyline(rng, n, center=(0.0, 0.0), radius=1.0):
    """Monotone in x, so never self-intersecting."""
    xs = np.sort(rng.uniform(-radius, radius, n))
    ys = rng.uniform(-radius, radius, n)
    return [(center[0] + x, center[1] + y) for x, y in zip(xs, ys)]


def random_shape(rng, max_vertices=20):
    kind = rng.integers(3)
    n = int(rng.integers(3, max_vertices + 1))
    c = tuple(rng.uniform(-0.5, 0.5, 2))
    if kind == 0:
        return Shape.polygon(star_polygon(rng, n, c))
    if kind == 1:
        return Shape.polygon(convex_polygon(rng, n, c))
    return Shape.polyline(random_polyline(rng, n, c))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def boundary_distance(R, pts):
    """Distance from each point to the boundary features of region R."""
    from hausmid import kernels

    return kernels.min_dist_many(np.asarray(pts, float), R.features)[0]


def mismatches_outside_band(R, g1, g2, band):
    """Cells where two same-pitch grids disagree, farther than ``band`` from R's boundary."""
    from hausmid.oracle import _frame, _place

    i0, j0, shape = _frame(g1, g2)
    diff = _place(g1, i0, j0, shape) ^ _place(g2, i0, j0, shape)
    ii, jj = np.nonzero(diff)
    if not len(ii):
        return 0
    pts = np.column_stack([(jj + j0) * g1.h, (ii + i0) * g1.h])
    return int((boundary_distance(R, pts) > band).sum())


def raster_of(R, h):
    """Oracle raster of an analytic region (cells whose centre is in R, or within h/2)."""
    from hausmid.oracle import rasterize

    return rasterize(R, h)


# --- acceptance report ---------------------------------------------------------

_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    verdict = "PASS" if call.excinfo is None else "FAIL"
    _criteria[n] = (verdict, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        verdict, title, detail = _criteria[n]
        line = f"[{verdict}] {n:>2}. {title}"
        terminalreporter.write_line(line + (f": {detail}" if detail else ""))
