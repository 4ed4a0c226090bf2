"""Input shapes, arc-bounded regions and disk dilation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from . import kernels
from .arrangement import dedupe, loop_area, prune_dangling, split_edges, trace_loops, VertexSnapper
from .geometry import (Arc, Edge, Point, Segment, circle, cross, dist, dist_point_edge, feature_rows,
                       parity_rows, tolerance_for)


@dataclass(frozen=True)
class Shape:
    """An input set: simple polygons (with optional holes), open polylines and points."""

    polygons: tuple = ()
    polylines: tuple = ()
    points: tuple = ()

    @classmethod
    def from_lists(cls, polygons=(), polylines=(), points=()) -> "Shape":
        polys = tuple(tuple(tuple(_pt(p) for p in loop) for loop in poly) for poly in polygons)
        lines = tuple(tuple(_pt(p) for p in line) for line in polylines)
        return cls(polys, lines, tuple(_pt(p) for p in points))

    @classmethod
    def polygon(cls, outer, holes=()) -> "Shape":
        return cls.from_lists(polygons=[[outer, *holes]])

    @classmethod
    def polyline(cls, *lines) -> "Shape":
        return cls.from_lists(polylines=lines)

    @classmethod
    def point_set(cls, *points) -> "Shape":
        return cls.from_lists(points=points)

    def vertices(self) -> list[Point]:
        out = [p for poly in self.polygons for loop in poly for p in loop]
        out += [p for line in self.polylines for p in line]
        return out + list(self.points)

    def is_empty(self) -> bool:
        return not self.vertices()

    def translated(self, dx: float, dy: float) -> "Shape":
        mv = lambda p: (p[0] + dx, p[1] + dy)  # noqa: E731
        return Shape(tuple(tuple(tuple(mv(p) for p in loop) for loop in poly) for poly in self.polygons),
                     tuple(tuple(mv(p) for p in line) for line in self.polylines),
                     tuple(mv(p) for p in self.points))

    def to_region(self) -> "ArcRegion":
        faces: list[Face] = []
        for poly in self.polygons:
            outer = _orient(_close_loop(poly[0]), ccw=True)
            holes = tuple(_orient(_close_loop(h), ccw=False) for h in poly[1:])
            faces.append(Face(outer=outer, holes=holes))
        for line in self.polylines:
            pts = _dedupe_consecutive(line)
            if len(pts) == 1:
                faces.append(Face(point=pts[0]))
            else:
                faces.append(Face(wire=tuple(Segment(a, b) for a, b in zip(pts, pts[1:]))))
        faces.extend(Face(point=p) for p in self.points)
        return ArcRegion(tuple(faces))


def _pt(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite coordinate {p!r}")
    return (x, y)


def _dedupe_consecutive(pts: Sequence[Point]) -> list[Point]:
    out: list[Point] = []
    for p in pts:
        if not out or p != out[-1]:
            out.append(p)
    return out


def _close_loop(pts: Sequence[Point]) -> tuple[Edge, ...]:
    pts = _dedupe_consecutive(pts)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts = pts[:-1]
    if len(pts) < 3:
        raise ValueError("polygon loop needs at least three distinct vertices")
    if _crosses_itself(np.asarray(pts)):
        raise ValueError("polygon loop crosses itself")
    return tuple(Segment(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts)))


def _crosses_itself(P: np.ndarray) -> bool:
    """True if two non-adjacent edges of the closed loop P cross properly."""
    n = len(P)
    if n < 4:
        return False
    Q = np.roll(P, -1, axis=0)
    D = Q - P

    def side(X):
        # [i, j]: which side of edge i the point X[j] lies on
        return np.sign(D[:, None, 0] * (X[None, :, 1] - P[:, None, 1])
                       - D[:, None, 1] * (X[None, :, 0] - P[:, None, 0]))

    s = side(P) * side(Q) < 0
    hit = s & s.T
    i, j = np.triu_indices(n, 2)
    keep = (j - i) % n != n - 1
    return bool(hit[i[keep], j[keep]].any())


def _orient(loop: tuple[Edge, ...], ccw: bool) -> tuple[Edge, ...]:
    if (loop_area(loop) > 0) == ccw:
        return loop
    return tuple(e.reversed() for e in reversed(loop))


@dataclass(frozen=True)
class Face:
    """A connected piece of a region.

    Exactly one of three kinds: a 2D face (``outer`` counter-clockwise loop plus
    clockwise ``holes``), a 1D ``wire`` (chain or set of edges) or a ``point``.
    """

    outer: tuple = ()
    holes: tuple = ()
    wire: tuple = ()
    point: Point | None = None

    @property
    def kind(self) -> str:
        if self.outer:
            return "area"
        if self.wire:
            return "wire"
        return "point"

    def loops(self) -> tuple:
        return (self.outer, *self.holes) if self.outer else ()

    def edges(self) -> list[Edge]:
        return [e for loop in self.loops() for e in loop] + list(self.wire)

    def vertices(self) -> list[Point]:
        if self.point is not None:
            return [self.point]
        out = []
        for e in self.edges():
            out.append(e.start)
            out.append(e.end)
        return out


@dataclass(frozen=True)
class ArcRegion:
    """A closed planar set bounded by segments and circular arcs.

    Zero-area pieces (wires and points) are kept as faces of their own.
    """

    faces: tuple = ()

    def is_empty(self) -> bool:
        return not self.faces

    @cached_property
    def loop_edges(self) -> list[Edge]:
        return [e for f in self.faces for loop in f.loops() for e in loop]

    @cached_property
    def wire_edges(self) -> list[Edge]:
        return [e for f in self.faces for e in f.wire]

    @cached_property
    def point_faces(self) -> list[Point]:
        return [f.point for f in self.faces if f.point is not None]

    @cached_property
    def features(self) -> np.ndarray:
        return feature_rows(self.loop_edges + self.wire_edges, self.point_faces)

    @cached_property
    def parity(self) -> np.ndarray:
        return parity_rows(self.loop_edges)

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        boxes = [e.bbox() for e in self.loop_edges + self.wire_edges]
        boxes += [(p[0], p[1], p[0], p[1]) for p in self.point_faces]
        if not boxes:
            return (0.0, 0.0, 0.0, 0.0)
        b = np.array(boxes)
        return (float(b[:, 0].min()), float(b[:, 1].min()), float(b[:, 2].max()), float(b[:, 3].max()))

    @property
    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bbox
        return math.hypot(x1 - x0, y1 - y0)

    @property
    def tol(self) -> float:
        return tolerance_for(self.diameter)

    def distance(self, p: Point) -> float:
        """Euclidean distance from ``p`` to the region (0 inside)."""
        if self.is_empty():
            return math.inf
        if len(self.parity) and kernels.inside(p[0], p[1], self.parity):
            return 0.0
        return kernels.min_dist(p[0], p[1], self.features)[0]

    def distances(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        if self.is_empty():
            return np.full(len(pts), np.inf)
        d, _ = kernels.min_dist_many(pts, self.features)
        if len(self.parity):
            d[kernels.inside_many(pts, self.parity)] = 0.0
        return d

    def contains_point(self, p: Point, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        return self.distance(p) <= tol

    def edges(self) -> list[Edge]:
        return self.loop_edges + self.wire_edges

    def vertices(self) -> list[Point]:
        return [v for f in self.faces for v in f.vertices()]


Geometry = Union[Shape, ArcRegion]


def as_region(s: Geometry) -> ArcRegion:
    return s.to_region() if isinstance(s, Shape) else s


def point_in_loop(p: Point, loop: Sequence[Edge], tol: float | None = None) -> str:
    """Classify ``p`` against a closed loop: 'inside', 'outside' or 'boundary'."""
    if tol is None:
        x0, y0, x1, y1 = np.array([e.bbox() for e in loop]).T
        tol = tolerance_for(math.hypot(x1.max() - x0.min(), y1.max() - y0.min()))
    if not loop or any(dist(a.end, b.start) > 10 * tol for a, b in zip(loop, list(loop[1:]) + [loop[0]])):
        raise ValueError("loop is not closed")
    if min(dist_point_edge(p, e) for e in loop) <= tol:
        return "boundary"
    return "inside" if kernels.inside(p[0], p[1], parity_rows(loop)) else "outside"


# --- measures ------------------------------------------------------------------

def area(R: Geometry) -> float:
    R = as_region(R)
    return float(sum(loop_area(loop) for f in R.faces for loop in f.loops()))


def _faces_touch(f: Face, g: Face, tol: float) -> bool:
    Ff = feature_rows(f.edges(), [f.point] if f.point is not None else [])
    for v in g.vertices():
        if kernels.min_dist(v[0], v[1], Ff)[0] <= tol:
            return True
        if f.outer and kernels.inside(v[0], v[1], parity_rows(f.outer)) and not any(
                kernels.inside(v[0], v[1], parity_rows(h)) for h in f.holes):
            return True
    return False


def component_count(R: Geometry) -> int:
    """Number of connected components (faces touching at a point count as one)."""
    R = as_region(R)
    n = len(R.faces)
    if n < 2:
        return n
    tol = 10 * R.tol
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    boxes = []
    for f in R.faces:
        vs = np.array(f.vertices() or [(0.0, 0.0)])
        bb = [e.bbox() for e in f.edges()] or [(vs[0, 0], vs[0, 1], vs[0, 0], vs[0, 1])]
        b = np.array(bb)
        boxes.append((b[:, 0].min() - tol, b[:, 1].min() - tol, b[:, 2].max() + tol, b[:, 3].max() + tol))
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = boxes[i], boxes[j]
            if bi[0] > bj[2] or bj[0] > bi[2] or bi[1] > bj[3] or bj[1] > bi[3]:
                continue
            if find(i) == find(j):
                continue
            if _faces_touch(R.faces[i], R.faces[j], tol) or _faces_touch(R.faces[j], R.faces[i], tol):
                parent[find(i)] = find(j)
    return len({find(i) for i in range(n)})


def is_convex(R: Geometry) -> bool:
    R = as_region(R)
    if R.is_empty():
        return True
    if len(R.faces) != 1:
        return False
    f = R.faces[0]
    tol = R.tol
    if f.kind == "point":
        return True
    if f.kind == "wire":
        pts = f.vertices()
        a = pts[0]
        b = max(pts, key=lambda q: dist(a, q))
        return all(isinstance(e, Segment) for e in f.wire) and all(
            abs(cross(a, b, q)) <= tol * max(dist(a, b), 1e-300) for q in pts)
    if f.holes:
        return False
    loop = f.outer
    turning = 0.0
    for k, e in enumerate(loop):
        if isinstance(e, Arc):
            if e.sweep < 0:
                return False
            turning += e.sweep
        nxt = loop[(k + 1) % len(loop)]
        t_in = e.tangent_at(1.0)
        t_out = nxt.tangent_at(0.0)
        c = t_in[0] * t_out[1] - t_in[1] * t_out[0]
        d = t_in[0] * t_out[0] + t_in[1] * t_out[1]
        ang = math.atan2(c, d)
        if ang < -1e-9:
            return False
        turning += ang
    return abs(turning - 2 * math.pi) < 1e-6


# --- dilation ----------------------------------------------------------------

def _offset_candidates(R: ArcRegion, r: float, tol: float) -> list[Edge]:
    """Curves at distance ``r`` from the region, oriented with the region on their left."""
    out: list[Edge] = []
    verts: list[Point] = list(R.point_faces)

    def seg_side(e: Segment, both: bool) -> None:
        (x0, y0), (x1, y1) = e.p, e.q
        L = e.length()
        if L <= tol:
            return
        nx, ny = (y1 - y0) / L * r, -(x1 - x0) / L * r  # right normal
        out.append(Segment((x0 + nx, y0 + ny), (x1 + nx, y1 + ny)))
        if both:
            out.append(Segment((x1 - nx, y1 - ny), (x0 - nx, y0 - ny)))

    def arc_sides(e: Arc, outward_only: bool) -> None:
        c, R0, a0, sw = e.center, e.radius, e.start_angle, e.sweep
        big = Arc(c, R0 + r, a0, sw) if sw > 0 else Arc(c, R0 + r, a0 + sw, -sw)
        small = None
        if R0 - r > tol:
            small = Arc(c, R0 - r, a0, sw) if sw < 0 else Arc(c, R0 - r, a0 + sw, -sw)
        elif r - R0 > tol:
            small = Arc(c, r - R0, a0 + math.pi + sw, -sw) if sw < 0 else Arc(c, r - R0, a0 + math.pi, sw)
        if outward_only:
            # loop arcs keep the region on their left: ccw arcs grow outward, cw arcs shrink
            if sw > 0:
                out.append(big)
            elif small is not None:
                out.append(small)
        else:
            out.append(big)
            if small is not None:
                out.append(small)

    for f in R.faces:
        for loop in f.loops():
            for e in loop:
                verts.append(e.start)
                if isinstance(e, Segment):
                    seg_side(e, both=False)
                else:
                    arc_sides(e, outward_only=True)
        for e in f.wire:
            verts.append(e.start)
            verts.append(e.end)
            if isinstance(e, Segment):
                seg_side(e, both=True)
            else:
                arc_sides(e, outward_only=False)
    snap = VertexSnapper(tol)
    seen = set()
    for v in verts:
        v = snap(v)
        if v not in seen:
            seen.add(v)
            out.append(circle(v, r))
    return out


def dilate(s: Geometry, r: float) -> ArcRegion:
    """Minkowski sum of ``s`` with the closed disk of radius ``r``."""
    if r < 0:
        raise ValueError("dilation radius must be nonnegative")
    R = as_region(s)
    if r == 0 or R.is_empty():
        return R
    tol = tolerance_for(R.diameter + 2 * r)
    cands = _offset_candidates(R, r, tol)
    pieces = [e for _, e in split_edges(cands, tol)]
    if not pieces:
        return ArcRegion()
    mids = np.array([e.point_at(0.5) for e in pieces])
    d = R.distances(mids)
    # snapping moves circle centres by at most tol
    keep_tol = max(10 * tol, 1e-12 * r)
    kept = [e for e, di in zip(pieces, d) if di >= r - keep_tol]
    kept = prune_dangling(dedupe(kept, tol, cancel_opposite=True))
    return faces_from_loops(trace_loops(kept, tol), tol)


def faces_from_loops(loops: Iterable[Sequence[Edge]], tol: float) -> ArcRegion:
    """Group traced loops into faces: positive loops are outer boundaries and
    negative loops become holes of the smallest outer loop containing them."""
    outers, holes = [], []
    for loop in loops:
        a = loop_area(loop)
        per = sum(e.length() for e in loop)
        if abs(a) <= tol * per:
            continue
        (outers if a > 0 else holes).append((abs(a), tuple(loop)))
    outers.sort(key=lambda t: t[0])
    parities = [parity_rows(o) for _, o in outers]
    assigned: list[list] = [[] for _ in outers]
    for _, h in holes:
        probe = _probe_point(h)
        for k, (_, o) in enumerate(outers):
            if kernels.inside(probe[0], probe[1], parities[k]):
                assigned[k].append(h)
                break
    return ArcRegion(tuple(Face(outer=o, holes=tuple(assigned[k])) for k, (_, o) in enumerate(outers)))


def _probe_point(loop: Sequence[Edge]) -> Point:
    """A point just to the right of the loop (outside a hole's interior side)."""
    e = max(loop, key=lambda x: x.length())
    m = e.point_at(0.5)
    t = e.tangent_at(0.5)
    eps = 1e-6 * max(e.length(), 1e-12)
    return (m[0] + t[1] * eps, m[1] - t[0] * eps)
