"""Directed and undirected Hausdorff distances.

The directed distance from X to Y is the maximum over X of ``g(x) = d(x, Y)``.
It is found by best-first branch and bound: X's vertices are evaluated
exactly, its edges are bisected as parameter intervals and its 2D faces are
covered by quadtree cells.  Every open item carries a certified upper bound of
``g`` over its piece, so the search stops once no item can beat the best value
found by more than ``eps``.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import Arc, Point, Segment, closest_param, dist
from .region import ArcRegion, Geometry, as_region

MAX_ITEMS = 2_000_000


@dataclass(frozen=True)
class HausdorffResult:
    """The true distance lies in ``[value - precision, value + precision]``."""

    value: float
    precision: float
    witness: Point | None


def default_eps(*regions: ArcRegion) -> float:
    boxes = np.array([R.bbox for R in regions if not R.is_empty()] or [(0.0, 0.0, 0.0, 0.0)])
    diam = math.hypot(boxes[:, 2].max() - boxes[:, 0].min(), boxes[:, 3].max() - boxes[:, 1].min())
    return max(1e-6 * diam, 1e-12)


class _Search:
    def __init__(self, X: ArcRegion, Y: ArcRegion, eps: float):
        self.X, self.Y, self.eps = X, Y, eps
        self.F = Y.features
        self.P = Y.parity
        self.best = -1.0
        self.arg: Point | None = None
        self.heap: list = []
        self.counter = 0

    def g(self, p: Point) -> float:
        v = self.Y.distance(p)
        if v > self.best:
            self.best, self.arg = v, p
        return v

    def deep_inside_y(self, p: Point, radius: float) -> bool:
        if not len(self.P) or not kernels.inside(p[0], p[1], self.P):
            return False
        return kernels.min_dist(p[0], p[1], self.F)[0] > radius

    def push(self, ub: float, item: tuple) -> None:
        if ub > self.best + self.eps:
            self.counter += 1
            heapq.heappush(self.heap, (-ub, self.counter, item))

    # --- edges --------------------------------------------------------------

    def push_segment(self, a: Point, b: Point, ga: float) -> None:
        if ga == 0.0 and self.deep_inside_y(a, dist(a, b)):
            return
        self.push(kernels.segment_ub(a[0], a[1], b[0], b[1], self.F), ("seg", a, b))

    def push_arc(self, arc: Arc, ga: float) -> None:
        if ga == 0.0 and self.deep_inside_y(arc.start, arc.length()):
            return
        ub = kernels.arc_ub(arc.center[0], arc.center[1], arc.radius, arc.start_angle, arc.sweep, self.F)
        self.push(ub, ("arc", arc))

    def split_segment(self, a: Point, b: Point) -> None:
        m = (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))
        gm = self.g(m)
        ga = self.Y.distance(a)
        self.push_segment(a, m, ga)
        self.push_segment(m, b, gm)

    def split_arc(self, arc: Arc) -> None:
        left, right = arc.sub(0.0, 0.5), arc.sub(0.5, 1.0)
        gm = self.g(right.start)
        self.push_arc(left, self.Y.distance(arc.start))
        self.push_arc(right, gm)

    # --- cells --------------------------------------------------------------

    def push_cell(self, x: float, y: float, h: float) -> None:
        hd = h * math.sqrt(2.0)
        c = (x, y)
        if self.X.distance(c) > hd:
            return
        if self.deep_inside_y(c, hd):
            return
        ub, count, idx = kernels.cell_bounds(x, y, h, self.F)
        if count == 1 and self._single_feature_has_no_peak(idx, x, y, h):
            return
        if 1 < count <= 16 and self._directions_one_sided(x, y, hd, ub):
            return
        if self.X.distance(c) <= 0.0:
            self.g(c)
        self.push(ub, ("cell", x, y, h))

    def _single_feature_has_no_peak(self, idx: int, x: float, y: float, h: float) -> bool:
        """A lone nearest feature rules out interior maxima unless the cell
        holds one of the feature's critical points."""
        row = self.F[idx]
        if row[0] != kernels.ARC:
            return True
        pad = h + 1e-12 * (abs(x) + abs(y) + h)
        cx, cy = row[5], row[6]
        mx, my = 0.5 * (row[1] + row[3]), 0.5 * (row[2] + row[4])
        for px, py in ((cx, cy), (mx, my)):
            if abs(px - x) <= pad and abs(py - y) <= pad:
                return False
        return True

    def _directions_one_sided(self, x: float, y: float, hd: float, ub: float) -> bool:
        """True when, over the whole cell, the directions away from the
        possible nearest features fit in an open half-plane, so the distance
        function has no critical point (and no local maximum) in the cell."""
        d = kernels.feature_dists(x, y, self.F)
        cands = np.flatnonzero(d - hd <= ub)
        starts, widths = [], []
        for j in cands:
            row = self.F[j]
            if d[j] - hd <= 0:
                return False
            q = _nearest_on_feature(row, x, y)
            reach = d[j] - hd
            if row[0] == kernels.ARC:
                rho = math.hypot(x - row[5], y - row[6]) - hd
                if rho <= 0:
                    return False
                reach = min(reach, rho)
            slack = math.asin(min(1.0, hd / reach))
            starts.append(math.atan2(y - q[1], x - q[0]) - slack)
            widths.append(2 * slack)
        return _min_enclosing_arc(starts, widths) < math.pi - 1e-9

    def split_cell(self, x: float, y: float, h: float) -> None:
        q = 0.5 * h
        for dx in (-q, q):
            for dy in (-q, q):
                self.push_cell(x + dx, y + dy, q)

    # --- driver -------------------------------------------------------------

    def run(self) -> HausdorffResult:
        X = self.X
        for v in X.vertices():
            self.g(v)
        for e in X.edges():
            if isinstance(e, Segment):
                self.push_segment(e.p, e.q, self.Y.distance(e.p))
            else:
                n = max(1, int(math.ceil(abs(e.sweep) / (math.pi / 2))))
                for k in range(n):
                    sub = e.sub(k / n, (k + 1) / n)
                    self.push_arc(sub, self.g(sub.start))
        for f in X.faces:
            if f.kind != "area":
                continue
            xs = [b for e in f.outer for b in (e.bbox()[0], e.bbox()[2])]
            ys = [b for e in f.outer for b in (e.bbox()[1], e.bbox()[3])]
            h = 0.5 * max(max(xs) - min(xs), max(ys) - min(ys))
            self.push_cell(0.5 * (min(xs) + max(xs)), 0.5 * (min(ys) + max(ys)), h)
        steps = 0
        while self.heap:
            neg_ub, _, item = heapq.heappop(self.heap)
            if -neg_ub <= self.best + self.eps:
                break
            steps += 1
            if steps > MAX_ITEMS:
                raise RuntimeError("Hausdorff search did not converge")
            if item[0] == "seg":
                self.split_segment(item[1], item[2])
            elif item[0] == "arc":
                self.split_arc(item[1])
            else:
                self.split_cell(item[1], item[2], item[3])
        return HausdorffResult(max(self.best, 0.0), self.eps, self.arg)


def _nearest_on_feature(row, x: float, y: float) -> Point:
    kind = row[0]
    if kind == kernels.POINT:
        return (row[1], row[2])
    if kind == kernels.SEGMENT:
        seg = Segment((row[1], row[2]), (row[3], row[4]))
        return seg.point_at(closest_param((x, y), seg))
    arc = Arc((row[5], row[6]), row[7], row[8], row[9])
    return arc.point_at(closest_param((x, y), arc))


def _min_enclosing_arc(starts: list[float], widths: list[float]) -> float:
    """Length of the shortest circular arc covering all angular intervals."""
    s = [a % (2 * math.pi) for a in starts]
    best = math.inf
    for i in range(len(s)):
        span = max((s[j] - s[i]) % (2 * math.pi) + widths[j] for j in range(len(s)))
        best = min(best, span)
    return best


def directed_hausdorff(A: Geometry, B: Geometry, eps: float | None = None) -> HausdorffResult:
    """sup over a in A of d(a, B), to within ``eps``."""
    X, Y = as_region(A), as_region(B)
    if eps is None:
        eps = default_eps(X, Y)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if X.is_empty() or Y.is_empty():
        raise ValueError("Hausdorff distance of an empty set is undefined")
    return _Search(X, Y, eps).run()


def hausdorff(A: Geometry, B: Geometry, eps: float | None = None) -> HausdorffResult:
    """Undirected Hausdorff distance: the larger of the two directed ones."""
    ab = directed_hausdorff(A, B, eps)
    ba = directed_hausdorff(B, A, eps)
    return ab if ab.value >= ba.value else ba


def hausdorff_pair(A: Geometry, B: Geometry, eps: float | None = None) -> tuple[HausdorffResult, HausdorffResult]:
    """Both directed distances (A to B, B to A)."""
    return directed_hausdorff(A, B, eps), directed_hausdorff(B, A, eps)
