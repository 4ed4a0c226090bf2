"""Edge arrangements: split edges at mutual intersections, snap vertices and
trace closed loops."""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable, Sequence

import numpy as np

from .geometry import (Arc, Edge, Point, Segment, closest_param, dist, dist_point_edge, edge_bbox_array,
                       intersect_edges)

TWO_PI = 2.0 * math.pi


class VertexSnapper:
    """Maps points within ``tol`` of each other to one representative."""

    def __init__(self, tol: float):
        self.tol = tol
        self.cell = max(tol, 1e-300) * 4.0
        self.grid: dict[tuple[int, int], list[Point]] = defaultdict(list)

    def __call__(self, p: Point) -> Point:
        i = int(math.floor(p[0] / self.cell))
        j = int(math.floor(p[1] / self.cell))
        best = None
        bd = self.tol
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                for q in self.grid.get((i + di, j + dj), ()):
                    d = dist(p, q)
                    if d <= bd:
                        best, bd = q, d
        if best is not None:
            return best
        p = (float(p[0]), float(p[1]))
        self.grid[(i, j)].append(p)
        return p


def candidate_pairs(edges: Sequence[Edge], pad: float) -> Iterable[tuple[int, int]]:
    """Index pairs ``i < j`` whose padded bounding boxes overlap."""
    n = len(edges)
    if n < 2:
        return
    bb = edge_bbox_array(edges)
    bb[:, :2] -= pad
    bb[:, 2:] += pad
    order = np.argsort(bb[:, 0], kind="stable")
    xs = bb[order, 0]
    for a in range(n):
        i = order[a]
        hi = np.searchsorted(xs, bb[i, 2], side="right")
        if hi <= a + 1:
            continue
        js = order[a + 1:hi]
        ok = (bb[js, 1] <= bb[i, 3]) & (bb[js, 3] >= bb[i, 1])
        for j in js[ok]:
            yield (i, j) if i < j else (j, i)


def split_edges(edges: Sequence[Edge], tol: float, snap: VertexSnapper | None = None) -> list[tuple[int, Edge]]:
    """Split every edge at its crossings with the others and at other edges'
    endpoints lying on it.  Returns ``(source index, sub-edge)`` pairs whose
    endpoints are snapped so that equal vertices compare equal."""
    snap = snap or VertexSnapper(tol)
    params: list[list[float]] = [[0.0, 1.0] for _ in edges]
    for i, j in candidate_pairs(edges, 2 * tol):
        e, f = edges[i], edges[j]
        for t, u in intersect_edges(e, f, tol):
            params[i].append(t)
            params[j].append(u)
        for a, b, pa in ((e, f, params[j]), (f, e, params[i])):
            for p in (a.start, a.end):
                if dist_point_edge(p, b) <= tol:
                    pa.append(closest_param(p, b))
    out: list[tuple[int, Edge]] = []
    for i, e in enumerate(edges):
        ts = sorted(set(min(max(t, 0.0), 1.0) for t in params[i]))
        if isinstance(e, Arc) and e.is_full() and len(ts) > 2:
            # rotate a full circle so that it starts at its first split
            t0 = ts[1]
            e = Arc(e.center, e.radius, e.angle_at(t0), e.sweep)
            ts = sorted(set([0.0, 1.0] + [(t - t0) % 1.0 for t in ts]))
        pts = [snap(e.point_at(t)) for t in ts]
        for k in range(len(ts) - 1):
            a, b = pts[k], pts[k + 1]
            if a == b and not (isinstance(e, Arc) and e.is_full() and len(ts) == 2):
                continue
            sub = e.sub(ts[k], ts[k + 1])
            if isinstance(sub, Arc) and sub.length() <= tol and a != b:
                sub = Segment(a, b)
            out.append((i, sub.with_endpoints(a, b)))
    return out


def midpoint(e: Edge) -> Point:
    return e.point_at(0.5)


def edge_key(e: Edge, tol: float) -> tuple:
    m = midpoint(e)
    s = 1.0 / max(tol * 16, 1e-300)
    return (e.start, e.end, round(m[0] * s), round(m[1] * s))


def dedupe(edges: Sequence[Edge], tol: float, cancel_opposite: bool = True) -> list[Edge]:
    """Drop repeated sub-edges; optionally cancel pairs running in opposite directions."""
    seen: dict[tuple, Edge] = {}
    for e in edges:
        k = edge_key(e, tol)
        if k not in seen:
            seen[k] = e
    if not cancel_opposite:
        return list(seen.values())
    out = []
    for k, e in seen.items():
        rk = edge_key(e.reversed(), tol)
        if rk in seen and rk != k:
            continue
        out.append(e)
    return out


def _angle_cw(b: Point, d: Point) -> float:
    """Clockwise angle in [0, 2pi) that rotates direction ``b`` onto ``d``."""
    a = math.atan2(b[1], b[0]) - math.atan2(d[1], d[0])
    return a % TWO_PI


def prune_dangling(edges: Sequence[Edge]) -> list[Edge]:
    """Drop edges that cannot lie on a closed loop (an end with no
    continuation or a start with no predecessor), repeatedly."""
    live = list(edges)
    while True:
        starts = defaultdict(int)
        ends = defaultdict(int)
        for e in live:
            starts[e.start] += 1
            ends[e.end] += 1
        keep = [e for e in live if starts[e.end] and ends[e.start]]
        if len(keep) == len(live):
            return keep
        live = keep


def trace_loops(edges: Sequence[Edge], tol: float) -> list[list[Edge]]:
    """Chain oriented sub-edges into closed loops, taking the sharpest left
    turn at every vertex so that loops touching at a point stay separate."""
    out_edges: dict[Point, list[int]] = defaultdict(list)
    for i, e in enumerate(edges):
        out_edges[e.start].append(i)
    used = [False] * len(edges)
    loops: list[list[Edge]] = []
    for s in range(len(edges)):
        if used[s]:
            continue
        loop = [edges[s]]
        used[s] = True
        start = edges[s].start
        cur = edges[s]
        while cur.end != start:
            cands = [i for i in out_edges.get(cur.end, ()) if not used[i]]
            if not cands:
                break
            b = cur.tangent_at(1.0)
            b = (-b[0], -b[1])
            k_rev = -cur.curvature()

            def key(i: int) -> tuple[float, float]:
                e = edges[i]
                th = _angle_cw(b, e.tangent_at(0.0))
                if th < 1e-9 or th > TWO_PI - 1e-9:
                    th = 0.0 if e.curvature() < k_rev else TWO_PI
                return (th, -e.curvature())

            nxt = min(cands, key=key)
            used[nxt] = True
            cur = edges[nxt]
            loop.append(cur)
        if cur.end == start:
            loops.append(merge_loop(loop, tol))
    return loops


def _mergeable(e: Edge, f: Edge, tol: float) -> bool:
    if isinstance(e, Segment) and isinstance(f, Segment):
        (ax, ay), (bx, by), (cx, cy) = e.start, e.end, f.end
        l1 = math.hypot(bx - ax, by - ay)
        l2 = math.hypot(cx - bx, cy - by)
        c = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
        dot = (bx - ax) * (cx - bx) + (by - ay) * (cy - by)
        return dot > 0 and abs(c) <= tol * (l1 + l2)
    if isinstance(e, Arc) and isinstance(f, Arc):
        return (dist(e.center, f.center) <= tol and abs(e.radius - f.radius) <= tol
                and (e.sweep > 0) == (f.sweep > 0) and abs(e.sweep + f.sweep) < TWO_PI - 1e-9)
    return False


def merge_loop(loop: list[Edge], tol: float) -> list[Edge]:
    """Fuse consecutive collinear segments and consecutive co-circular arcs."""
    if len(loop) < 2:
        return loop
    out = list(loop)
    changed = True
    while changed and len(out) > 1:
        changed = False
        for k in range(len(out)):
            e, f = out[k], out[(k + 1) % len(out)]
            if _mergeable(e, f, tol):
                if isinstance(e, Segment):
                    g: Edge = Segment(e.start, f.end)
                else:
                    g = Arc(e.center, e.radius, e.start_angle, e.sweep + f.sweep).with_endpoints(e.start, f.end)
                if k + 1 < len(out):
                    out[k:k + 2] = [g]
                else:
                    out = [g] + out[1:-1]
                changed = True
                break
    return out


def loop_area(loop: Sequence[Edge]) -> float:
    """Signed area enclosed by a closed loop (positive when counter-clockwise)."""
    a = 0.0
    for e in loop:
        (x0, y0), (x1, y1) = e.start, e.end
        if isinstance(e, Segment):
            a += 0.5 * (x0 * y1 - x1 * y0)
        else:
            cx, cy = e.center
            a += 0.5 * (cx * (y1 - y0) - cy * (x1 - x0) + e.radius ** 2 * e.sweep)
    return a
