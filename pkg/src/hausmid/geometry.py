"""Planar primitives: points, segments and circular arcs.

Points are plain ``(x, y)`` float tuples.  An edge is either a :class:`Segment`
or an :class:`Arc`; both are parametrized over ``t`` in [0, 1].
"""
from __future__ import annotations

import math
import os
from typing import NamedTuple, Sequence, Union

import numpy as np

from .kernels import ARC, NCOL, PCOL, POINT, SEGMENT

Point = tuple[float, float]
TWO_PI = 2.0 * math.pi
DEFAULT_RELATIVE_TOLERANCE = 1e-9


def relative_tolerance() -> float:
    raw = os.environ.get("HM_TOLERANCE")
    if raw:
        return float(raw)
    return DEFAULT_RELATIVE_TOLERANCE


def tolerance_for(diameter: float) -> float:
    """Absolute snapping tolerance for inputs of the given bounding-box diameter."""
    return relative_tolerance() * max(diameter, 1e-300)


class Segment(NamedTuple):
    p: Point
    q: Point

    @property
    def start(self) -> Point:
        return self.p

    @property
    def end(self) -> Point:
        return self.q

    def length(self) -> float:
        return math.hypot(self.q[0] - self.p[0], self.q[1] - self.p[1])

    def point_at(self, t: float) -> Point:
        return (self.p[0] + t * (self.q[0] - self.p[0]), self.p[1] + t * (self.q[1] - self.p[1]))

    def tangent_at(self, t: float) -> Point:
        dx, dy = self.q[0] - self.p[0], self.q[1] - self.p[1]
        n = math.hypot(dx, dy) or 1.0
        return (dx / n, dy / n)

    def curvature(self) -> float:
        return 0.0

    def reversed(self) -> "Segment":
        return Segment(self.q, self.p)

    def sub(self, t0: float, t1: float) -> "Segment":
        return Segment(self.point_at(t0), self.point_at(t1))

    def bbox(self) -> tuple[float, float, float, float]:
        return (min(self.p[0], self.q[0]), min(self.p[1], self.q[1]),
                max(self.p[0], self.q[0]), max(self.p[1], self.q[1]))

    def with_endpoints(self, a: Point, b: Point) -> "Segment":
        return Segment(a, b)


class Arc(NamedTuple):
    """Circular arc: ``center + radius * (cos a, sin a)`` for a from ``start`` to
    ``start + sweep``.  Positive sweep is counter-clockwise."""

    center: Point
    radius: float
    start_angle: float
    sweep: float
    # exact (snapped) endpoint coordinates; computed from the angles when unset
    p0: Point | None = None
    p1: Point | None = None

    @property
    def start(self) -> Point:
        return self.p0 if self.p0 is not None else self.point_at(0.0)

    @property
    def end(self) -> Point:
        return self.p1 if self.p1 is not None else self.point_at(1.0)

    def is_full(self) -> bool:
        return abs(self.sweep) >= TWO_PI - 1e-12

    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def angle_at(self, t: float) -> float:
        return self.start_angle + t * self.sweep

    def point_at(self, t: float) -> Point:
        a = self.angle_at(t)
        return (self.center[0] + self.radius * math.cos(a), self.center[1] + self.radius * math.sin(a))

    def tangent_at(self, t: float) -> Point:
        a = self.angle_at(t)
        s = 1.0 if self.sweep >= 0 else -1.0
        return (-s * math.sin(a), s * math.cos(a))

    def curvature(self) -> float:
        """Signed curvature: positive when turning left (counter-clockwise)."""
        return (1.0 if self.sweep >= 0 else -1.0) / self.radius

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.start_angle + self.sweep, -self.sweep, self.p1, self.p0)

    def sub(self, t0: float, t1: float) -> "Arc":
        return Arc(self.center, self.radius, self.angle_at(t0), (t1 - t0) * self.sweep,
                   self.p0 if t0 == 0.0 else None, self.p1 if t1 == 1.0 else None)

    def param_of_angle(self, a: float) -> float | None:
        """Parameter of the point at polar angle ``a`` if it lies on the arc."""
        off = ((a - self.start_angle) * (1.0 if self.sweep >= 0 else -1.0)) % TWO_PI
        sw = abs(self.sweep)
        if sw == 0:
            return None
        if off <= sw + 1e-12:
            return min(off / sw, 1.0)
        if off >= TWO_PI - 1e-12:
            return 0.0
        return None

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [self.start[0], self.end[0]]
        ys = [self.start[1], self.end[1]]
        cx, cy = self.center
        r = self.radius
        for k in range(4):
            a = k * math.pi / 2
            if self.is_full() or self.param_of_angle(a) is not None:
                xs.append(cx + r * math.cos(a))
                ys.append(cy + r * math.sin(a))
        return (min(xs), min(ys), max(xs), max(ys))

    def with_endpoints(self, a: Point, b: Point) -> "Arc":
        """Same circle, endpoints moved (by snapping) to ``a`` and ``b``."""
        cx, cy = self.center
        a0 = math.atan2(a[1] - cy, a[0] - cx)
        a1 = math.atan2(b[1] - cy, b[0] - cx)
        if self.is_full() and a == b:
            return Arc(self.center, self.radius, a0, self.sweep, a, b)
        d = (a1 - a0) % TWO_PI if self.sweep > 0 else -((a0 - a1) % TWO_PI)
        if abs(d) > TWO_PI - 1e-9 and abs(self.sweep) < math.pi:
            d = math.copysign(1e-15, self.sweep)
        if abs(d) < 1e-15 and abs(self.sweep) > math.pi:
            d = math.copysign(TWO_PI, self.sweep)
        return Arc(self.center, self.radius, a0, d, a, b)


Edge = Union[Segment, Arc]


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def make_arc(center: Point, radius: float, p: Point, q: Point, ccw: bool) -> Arc:
    """Arc on the given circle from ``p`` to ``q`` in the given direction,
    keeping ``p`` and ``q`` as its exact end points."""
    a0 = math.atan2(p[1] - center[1], p[0] - center[0])
    a1 = math.atan2(q[1] - center[1], q[0] - center[0])
    if ccw:
        sw = (a1 - a0) % TWO_PI
    else:
        sw = -((a0 - a1) % TWO_PI)
    return Arc(center, radius, a0, sw, tuple(p), tuple(q))


def circle(center: Point, radius: float, ccw: bool = True) -> Arc:
    return Arc(center, radius, 0.0, TWO_PI if ccw else -TWO_PI)


def dist_point_edge(p: Point, e: Edge) -> float:
    if isinstance(e, Segment):
        (x0, y0), (x1, y1) = e.p, e.q
        dx, dy = x1 - x0, y1 - y0
        ll = dx * dx + dy * dy
        t = 0.0 if ll == 0 else max(0.0, min(1.0, ((p[0] - x0) * dx + (p[1] - y0) * dy) / ll))
        return math.hypot(p[0] - x0 - t * dx, p[1] - y0 - t * dy)
    cx, cy = e.center
    rho = math.hypot(p[0] - cx, p[1] - cy)
    if rho == 0:
        return e.radius
    if e.is_full() or e.param_of_angle(math.atan2(p[1] - cy, p[0] - cx)) is not None:
        return abs(rho - e.radius)
    return min(dist(p, e.start), dist(p, e.end))


def closest_param(p: Point, e: Edge) -> float:
    """Parameter of the point of ``e`` closest to ``p``."""
    if isinstance(e, Segment):
        (x0, y0), (x1, y1) = e.p, e.q
        dx, dy = x1 - x0, y1 - y0
        ll = dx * dx + dy * dy
        return 0.0 if ll == 0 else max(0.0, min(1.0, ((p[0] - x0) * dx + (p[1] - y0) * dy) / ll))
    t = e.param_of_angle(math.atan2(p[1] - e.center[1], p[0] - e.center[0]))
    if t is not None:
        return t
    return 0.0 if dist(p, e.start) <= dist(p, e.end) else 1.0


# --- intersections -----------------------------------------------------------

def _line_circle(p: Point, q: Point, c: Point, r: float, tol: float) -> list[float]:
    """Line parameters (along p->q) of intersections with a circle; tangency
    within ``tol`` yields a single parameter."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    ll = dx * dx + dy * dy
    if ll == 0:
        return []
    t0 = ((c[0] - p[0]) * dx + (c[1] - p[1]) * dy) / ll
    fx, fy = p[0] + t0 * dx - c[0], p[1] + t0 * dy - c[1]
    h = math.hypot(fx, fy)
    if h > r + tol:
        return []
    if h >= r - tol:
        return [t0]
    s = math.sqrt(r * r - h * h) / math.sqrt(ll)
    return [t0 - s, t0 + s]


def _circle_circle(c1: Point, r1: float, c2: Point, r2: float, tol: float) -> list[Point]:
    d = dist(c1, c2)
    if d <= tol:
        return []
    if d > r1 + r2 + tol or d < abs(r1 - r2) - tol:
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    ux, uy = (c2[0] - c1[0]) / d, (c2[1] - c1[1]) / d
    mx, my = c1[0] + a * ux, c1[1] + a * uy
    if abs(d - (r1 + r2)) <= tol or abs(d - abs(r1 - r2)) <= tol:
        return [(mx, my)]
    h2 = r1 * r1 - a * a
    if h2 <= 0:
        return [(mx, my)]
    h = math.sqrt(h2)
    return [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]


def _on_edge_param(e: Edge, pt: Point, tol: float) -> float | None:
    t = closest_param(pt, e)
    if dist(e.point_at(t), pt) <= tol:
        return t
    return None


def intersect_edges(e: Edge, f: Edge, tol: float) -> list[tuple[float, float]]:
    """Proper and tangential crossings of two edges as parameter pairs.

    Overlapping collinear / co-circular pieces are not reported here; callers
    handle them by splitting at the other edge's endpoints.
    """
    out: list[tuple[float, float]] = []
    if isinstance(e, Segment) and isinstance(f, Segment):
        (x1, y1), (x2, y2) = e.p, e.q
        (x3, y3), (x4, y4) = f.p, f.q
        den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
        le, lf = e.length(), f.length()
        if le == 0 or lf == 0 or abs(den) <= 1e-14 * le * lf:
            return out
        t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / den
        u = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / den
        if -tol / le <= t <= 1 + tol / le and -tol / lf <= u <= 1 + tol / lf:
            out.append((min(max(t, 0.0), 1.0), min(max(u, 0.0), 1.0)))
        return out
    if isinstance(e, Arc) and isinstance(f, Segment):
        return [(b, a) for a, b in intersect_edges(f, e, tol)]
    if isinstance(e, Segment):
        le = e.length()
        if le == 0:
            return out
        for t in _line_circle(e.p, e.q, f.center, f.radius, tol):
            if -tol / le <= t <= 1 + tol / le:
                t = min(max(t, 0.0), 1.0)
                pt = e.point_at(t)
                u = _on_edge_param(f, pt, 2 * tol)
                if u is not None:
                    out.append((t, u))
        return out
    for pt in _circle_circle(e.center, e.radius, f.center, f.radius, tol):
        t = _on_edge_param(e, pt, 2 * tol)
        u = _on_edge_param(f, pt, 2 * tol)
        if t is not None and u is not None:
            out.append((t, u))
    return out


class Overlap(NamedTuple):
    """A shared piece of two edges on the same line or circle, as the
    parameter range of the first edge and its end points."""

    t0: float
    t1: float
    start: Point
    end: Point


def _same_support(e: Edge, f: Edge, tol: float) -> bool:
    if isinstance(e, Segment) and isinstance(f, Segment):
        le = e.length()
        return le > 0 and all(abs(cross(e.p, e.q, x)) <= tol * le for x in (f.p, f.q))
    if isinstance(e, Arc) and isinstance(f, Arc):
        return dist(e.center, f.center) <= tol and abs(e.radius - f.radius) <= tol
    return False


def edge_overlap(e: Edge, f: Edge, tol: float) -> Overlap | None:
    """The piece of ``e`` that coincides with ``f``, if longer than ``tol``.

    Only the outermost shared parameters are reported, so two arcs sharing
    both ends of a circle yield one range spanning the gap between them."""
    if not _same_support(e, f, tol):
        return None
    ts = [t for t in (0.0, 1.0) if dist_point_edge(e.point_at(t), f) <= tol]
    for x in (f.start, f.end):
        t = _on_edge_param(e, x, tol)
        if t is not None:
            ts.append(t)
    if len(ts) < 2:
        return None
    t0, t1 = min(ts), max(ts)
    if t1 <= t0 or e.sub(t0, t1).length() <= tol:
        return None
    return Overlap(t0, t1, e.point_at(t0), e.point_at(t1))


def edge_intersection(e: Edge, f: Edge, tol: float | None = None) -> list[Point] | Overlap:
    """Crossing points of two edges (a tangency gives one snapped point), or
    an :class:`Overlap` when they share a piece of line or circle."""
    if tol is None:
        boxes = np.array([e.bbox(), f.bbox()])
        tol = tolerance_for(math.hypot(boxes[:, 2].max() - boxes[:, 0].min(), boxes[:, 3].max() - boxes[:, 1].min()))
    ov = edge_overlap(e, f, tol)
    if ov is not None:
        return ov
    pts: list[Point] = []
    for t, _ in intersect_edges(e, f, tol):
        q = e.point_at(t)
        if all(dist(q, r) > tol for r in pts):
            pts.append(q)
    return pts


def edge_bbox_array(edges: Sequence[Edge]) -> np.ndarray:
    return np.array([e.bbox() for e in edges], dtype=float).reshape(-1, 4)


# --- kernel tables -----------------------------------------------------------

def feature_rows(edges: Sequence[Edge], points: Sequence[Point] = ()) -> np.ndarray:
    """Feature table for the distance kernels."""
    F = np.zeros((len(edges) + len(points), NCOL))
    for i, e in enumerate(edges):
        s, t = e.start, e.end
        if isinstance(e, Segment):
            F[i, :5] = (SEGMENT, s[0], s[1], t[0], t[1])
        else:
            F[i] = (ARC, s[0], s[1], t[0], t[1], e.center[0], e.center[1],
                    e.radius, e.start_angle, e.sweep)
    for j, p in enumerate(points):
        F[len(edges) + j, :3] = (POINT, p[0], p[1])
    return F


def parity_rows(edges: Sequence[Edge]) -> np.ndarray:
    """Parity table for the even-odd kernels; edges must form closed loops."""
    rows = []
    for e in edges:
        if isinstance(e, Segment):
            rows.append((SEGMENT, e.p[0], e.p[1], e.q[0], e.q[1], 0.0, 0.0, 0.0, 0.0))
            continue
        a0 = e.start_angle
        a1 = e.start_angle + e.sweep
        lo, hi = min(a0, a1), max(a0, a1)
        cuts = [lo]
        k = math.floor((lo - math.pi / 2) / math.pi) + 1
        while math.pi / 2 + k * math.pi < hi:
            cuts.append(math.pi / 2 + k * math.pi)
            k += 1
        cuts.append(hi)
        cx, cy, r = e.center[0], e.center[1], e.radius
        pts = [(cx + r * math.cos(u), cy + r * math.sin(u)) for u in cuts]
        # endpoints shared with neighbouring edges must match bit for bit
        first, last = (e.start, e.end) if a0 <= a1 else (e.end, e.start)
        pts[0] = first
        pts[-1] = first if e.is_full() else last
        for k in range(len(cuts) - 1):
            u, v = cuts[k], cuts[k + 1]
            if v - u <= 0:
                continue
            side = 1.0 if math.cos(0.5 * (u + v)) >= 0 else -1.0
            rows.append((ARC, pts[k][0], pts[k][1], pts[k + 1][0], pts[k + 1][1], cx, cy, r, side))
    return np.array(rows, dtype=float).reshape(-1, PCOL)


def sample_edge(e: Edge, spacing: float) -> np.ndarray:
    """Points along ``e`` at most ``spacing`` apart, endpoints included."""
    n = max(1, int(math.ceil(e.length() / spacing)))
    ts = np.linspace(0.0, 1.0, n + 1)
    if isinstance(e, Segment):
        return np.stack([e.p[0] + ts * (e.q[0] - e.p[0]), e.p[1] + ts * (e.q[1] - e.p[1])], axis=1)
    a = e.start_angle + ts * e.sweep
    return np.stack([e.center[0] + e.radius * np.cos(a), e.center[1] + e.radius * np.sin(a)], axis=1)
