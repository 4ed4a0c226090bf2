"""Rasterized brute-force reference.

Sets are sampled onto a square lattice of pitch ``h`` anchored at the origin,
so any two grids with the same pitch line up cell for cell.  Nothing here
uses the analytic distance or arrangement code; it only reads the raw
coordinates of shapes and edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree


@dataclass(frozen=True)
class Grid:
    """Array cell (i, j) has center ``((j0 + j) h, (i0 + i) h)``."""

    i0: int
    j0: int
    h: float
    occ: np.ndarray

    @property
    def origin(self) -> tuple[float, float]:
        return (self.j0 * self.h, self.i0 * self.h)

    def count(self) -> int:
        return int(self.occ.sum())

    def area(self) -> float:
        return self.count() * self.h * self.h

    def is_empty(self) -> bool:
        return not self.occ.any()

    def centers(self) -> np.ndarray:
        ii, jj = np.nonzero(self.occ)
        return np.column_stack([(jj + self.j0) * self.h, (ii + self.i0) * self.h])


# --- sampling --------------------------------------------------------------------

def _sample_edge(e, step: float) -> np.ndarray:
    if hasattr(e, "radius"):
        n = max(2, int(math.ceil(abs(e.sweep) * e.radius / step)) + 1)
        t = e.start_angle + np.linspace(0.0, e.sweep, n)
        return np.column_stack([e.center[0] + e.radius * np.cos(t), e.center[1] + e.radius * np.sin(t)])
    p, q = np.asarray(e.p, float), np.asarray(e.q, float)
    n = max(2, int(math.ceil(np.hypot(*(q - p)) / step)) + 1)
    t = np.linspace(0.0, 1.0, n)[:, None]
    return p + t * (q - p)


def _sample_chain(pts, step: float) -> np.ndarray:
    pts = np.asarray(pts, float)
    if len(pts) == 1:
        return pts
    out = []
    for a, b in zip(pts[:-1], pts[1:]):
        n = max(2, int(math.ceil(np.hypot(*(b - a)) / step)) + 1)
        out.append(a + np.linspace(0.0, 1.0, n)[:, None] * (b - a))
    return np.vstack(out)


def _decompose(s, step: float):
    """(boundary samples, closed polygon rings for the even-odd test)."""
    samples, rings = [], []
    if hasattr(s, "polygons"):
        for poly in s.polygons:
            for loop in poly:
                ring = _sample_chain(list(loop) + [loop[0]], step)
                samples.append(ring)
                rings.append(ring)
        for line in s.polylines:
            samples.append(_sample_chain(line, step))
        if s.points:
            samples.append(np.asarray(s.points, float))
        return samples, rings
    for f in s.faces:
        if f.point is not None:
            samples.append(np.asarray([f.point], float))
            continue
        for e in f.wire:
            samples.append(_sample_edge(e, step))
        for loop in (f.outer,) + tuple(f.holes):
            if not loop:
                continue
            ring = np.vstack([_sample_edge(e, step) for e in loop])
            samples.append(ring)
            rings.append(ring)
    return samples, rings


def _even_odd(xs: np.ndarray, ys: np.ndarray, rings: list[np.ndarray]) -> np.ndarray:
    """Even-odd membership of the lattice xs * ys, one scanline per row."""
    segs = np.vstack([np.hstack([r[:-1], r[1:]]) for r in rings])
    x0, y0, x1, y1 = segs.T
    keep = y0 != y1
    x0, y0, x1, y1 = x0[keep], y0[keep], x1[keep], y1[keep]
    out = np.zeros((len(ys), len(xs)), bool)
    for i, y in enumerate(ys):
        hit = (y0 > y) != (y1 > y)
        if not hit.any():
            continue
        xc = np.sort(x0[hit] + (y - y0[hit]) * (x1[hit] - x0[hit]) / (y1[hit] - y0[hit]))
        right = len(xc) - np.searchsorted(xc, xs, side="right")
        out[i] = (right % 2) == 1
    return out


def _bounds(samples) -> tuple[float, float, float, float]:
    allp = np.vstack(samples)
    return allp[:, 0].min(), allp[:, 1].min(), allp[:, 0].max(), allp[:, 1].max()


def diameter(s) -> float:
    samples, _ = _decompose(s, math.inf)
    if not samples:
        return 0.0
    x0, y0, x1, y1 = _bounds(samples)
    return math.hypot(x1 - x0, y1 - y0)


def rasterize(s, h: float, pad: float = 0.0) -> Grid:
    """Cells whose center lies within h/2 of the set (or inside it)."""
    if h <= 0:
        raise ValueError("h must be positive")
    step = h / 8
    samples, rings = _decompose(s, step)
    if not samples:
        return Grid(0, 0, h, np.zeros((0, 0), bool))
    x0, y0, x1, y1 = _bounds(samples)
    m = pad + h
    j0, j1 = int(math.floor((x0 - m) / h)), int(math.ceil((x1 + m) / h))
    i0, i1 = int(math.floor((y0 - m) / h)), int(math.ceil((y1 + m) / h))
    xs, ys = np.arange(j0, j1 + 1) * h, np.arange(i0, i1 + 1) * h
    jj, ii = np.meshgrid(xs, ys)
    C = np.column_stack([jj.ravel(), ii.ravel()])
    occ = (cKDTree(np.vstack(samples)).query(C, distance_upper_bound=h / 2)[0] <= h / 2).reshape(jj.shape)
    if rings:
        occ |= _even_odd(xs, ys, rings)
    return Grid(i0, j0, h, occ)


def _frame(*grids: Grid, pad_cells: int = 0):
    h = grids[0].h
    if any(abs(g.h - h) > 1e-12 * h for g in grids):
        raise ValueError("grids must share the same pitch")
    live = [g for g in grids if g.occ.size]
    if not live:
        return 0, 0, (0, 0)
    i0 = min(g.i0 for g in live) - pad_cells
    j0 = min(g.j0 for g in live) - pad_cells
    i1 = max(g.i0 + g.occ.shape[0] for g in live) + pad_cells
    j1 = max(g.j0 + g.occ.shape[1] for g in live) + pad_cells
    return i0, j0, (i1 - i0, j1 - j0)


def _place(g: Grid, i0: int, j0: int, shape) -> np.ndarray:
    out = np.zeros(shape, bool)
    if g.occ.size:
        a, b = g.i0 - i0, g.j0 - j0
        out[a:a + g.occ.shape[0], b:b + g.occ.shape[1]] = g.occ
    return out


def grid_dilate(g: Grid, r: float) -> Grid:
    """Cells within Euclidean distance r of an occupied cell center."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0 or g.is_empty():
        return g
    k = int(math.ceil(r / g.h)) + 1
    i0, j0, shape = _frame(g, pad_cells=k)
    occ = _place(g, i0, j0, shape)
    dt = ndimage.distance_transform_edt(~occ) * g.h
    return Grid(i0, j0, g.h, dt <= r + 1e-9 * g.h)


def grid_intersect(*grids: Grid) -> Grid:
    i0, j0, shape = _frame(*grids)
    occ = np.ones(shape, bool)
    for g in grids:
        occ &= _place(g, i0, j0, shape)
    return Grid(i0, j0, grids[0].h, occ)


def grid_union(*grids: Grid) -> Grid:
    i0, j0, shape = _frame(*grids)
    occ = np.zeros(shape, bool)
    for g in grids:
        occ |= _place(g, i0, j0, shape)
    return Grid(i0, j0, grids[0].h, occ)


def grid_directed_hausdorff(g1: Grid, g2: Grid) -> float:
    if g1.is_empty() or g2.is_empty():
        raise ValueError("grid_hausdorff needs nonempty grids")
    i0, j0, shape = _frame(g1, g2)
    a, b = _place(g1, i0, j0, shape), _place(g2, i0, j0, shape)
    dt = ndimage.distance_transform_edt(~b) * g1.h
    return float(dt[a].max())


def grid_hausdorff(g1: Grid, g2: Grid) -> float:
    return max(grid_directed_hausdorff(g1, g2), grid_directed_hausdorff(g2, g1))


def grid_components(g: Grid) -> int:
    if g.is_empty():
        return 0
    return int(ndimage.label(g.occ, structure=np.ones((3, 3), bool))[1])


def default_pitch(*shapes) -> float:
    """diameter / 1000, the diameter taken over all shapes together."""
    samples = [p for s in shapes for p in _decompose(s, math.inf)[0]]
    if not samples:
        return 1e-12
    x0, y0, x1, y1 = _bounds(samples)
    return max(math.hypot(x1 - x0, y1 - y0), 1e-9) / 1000


__all__ = ["Grid", "rasterize", "grid_dilate", "grid_intersect", "grid_union", "grid_hausdorff",
           "grid_directed_hausdorff", "grid_components", "default_pitch", "diameter"]
