"""Boolean operations and containment tests on arc regions.

All inputs are cut against each other in a common arrangement.  Every
sub-edge is then classified against every other region as ``in``, ``out``,
``same`` / ``opp`` (on that region's boundary, running in the same or the
opposite direction) or ``wire`` (on one of its zero-area pieces).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .arrangement import VertexSnapper, edge_key, split_edges, trace_loops
from .geometry import Edge, Point, closest_param, feature_rows, parity_rows, tolerance_for
from .region import ArcRegion, Face, Geometry, as_region, faces_from_loops

IN, OUT, SAME, OPP, WIRE = "in", "out", "same", "opp", "wire"
CLOSED_IN = {IN, SAME, OPP, WIRE}


class Piece(NamedTuple):
    region: int
    on_loop: bool
    edge: Edge


@dataclass
class _Arrangement:
    regions: list[ArcRegion]
    pieces: list[Piece]
    status: list[list[str | None]]
    tol: float
    on_tol: float


def _common_tol(regions: Sequence[ArcRegion]) -> float:
    boxes = np.array([R.bbox for R in regions if not R.is_empty()] or [(0, 0, 0, 0)])
    diam = math.hypot(boxes[:, 2].max() - boxes[:, 0].min(), boxes[:, 3].max() - boxes[:, 1].min())
    return tolerance_for(diam)


def _build(regions: list[ArcRegion]) -> _Arrangement:
    tol = _common_tol(regions)
    on_tol = 10 * tol
    edges: list[Edge] = []
    tags: list[tuple[int, bool]] = []
    for i, R in enumerate(regions):
        for e in R.loop_edges:
            edges.append(e)
            tags.append((i, True))
        for e in R.wire_edges:
            edges.append(e)
            tags.append((i, False))
    split = split_edges(edges, tol, VertexSnapper(tol))
    pieces = [Piece(tags[k][0], tags[k][1], e) for k, e in split]
    status: list[list[str | None]] = [[None] * len(regions) for _ in pieces]
    if pieces:
        mids = np.array([p.edge.point_at(0.5) for p in pieces])
        for j, R in enumerate(regions):
            idx = [k for k, p in enumerate(pieces) if p.region != j]
            if not idx:
                continue
            col = classify_points(R, mids[idx], on_tol)
            for k, (kind, feat) in zip(idx, col):
                if kind == "boundary":
                    e_j = R.loop_edges[feat]
                    m = mids[k]
                    t_j = e_j.tangent_at(closest_param((m[0], m[1]), e_j))
                    t_k = pieces[k].edge.tangent_at(0.5)
                    kind = SAME if t_j[0] * t_k[0] + t_j[1] * t_k[1] > 0 else OPP
                status[k][j] = kind
    return _Arrangement(regions, pieces, status, tol, on_tol)


def classify_points(R: ArcRegion, pts: np.ndarray, on_tol: float) -> list[tuple[str, int]]:
    """Per point: ('boundary', loop edge index) | ('wire', -1) | ('in', -1) | ('out', -1)."""
    n = len(pts)
    out: list[tuple[str, int]] = [(OUT, -1)] * n
    if R.is_empty() or n == 0:
        return out
    nl = len(R.loop_edges)
    d_loop = np.full(n, np.inf)
    i_loop = np.full(n, -1)
    if nl:
        d_loop, i_loop = kernels.min_dist_many(pts, R.features[:nl])
    d_other = np.full(n, np.inf)
    if len(R.features) > nl:
        d_other, _ = kernels.min_dist_many(pts, R.features[nl:])
    inside = kernels.inside_many(pts, R.parity) if nl else np.zeros(n, dtype=bool)
    for k in range(n):
        if d_loop[k] <= on_tol:
            out[k] = ("boundary", int(i_loop[k]))
        elif d_other[k] <= on_tol:
            out[k] = (WIRE, -1)
        elif inside[k]:
            out[k] = (IN, -1)
    return out


def _closed_in(R: ArcRegion, p: Point, on_tol: float) -> bool:
    return R.distance(p) <= on_tol


def _wire_faces(edges: list[Edge]) -> list[Face]:
    """Group zero-area edges into connected wire faces."""
    parent = list(range(len(edges)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first: dict[Point, int] = {}
    for i, e in enumerate(edges):
        for v in (e.start, e.end):
            if v in first:
                parent[find(i)] = find(first[v])
            else:
                first[v] = i
    groups: dict[int, list[Edge]] = {}
    for i, e in enumerate(edges):
        groups.setdefault(find(i), []).append(e)
    return [Face(wire=tuple(g)) for g in groups.values()]


def intersect_regions(regions: Sequence[Geometry]) -> ArcRegion:
    """Pointwise intersection; tangential contacts survive as wires and points."""
    regs = [as_region(R) for R in regions]
    if not regs:
        raise ValueError("intersect_regions needs at least one region")
    if any(R.is_empty() for R in regs):
        return ArcRegion()
    if len(regs) == 1:
        return regs[0]
    A = _build(regs)
    m = len(regs)
    face_edges: list[Edge] = []
    wire_edges: list[Edge] = []
    for k, p in enumerate(A.pieces):
        st = [A.status[k][j] for j in range(m) if j != p.region]
        if not all(s in CLOSED_IN for s in st):
            continue
        if p.on_loop and all(s in (IN, SAME) for s in st):
            if any(A.status[k][j] == SAME for j in range(p.region)):
                continue
            face_edges.append(p.edge)
        else:
            wire_edges.append(p.edge)
    faces = faces_from_loops(trace_loops(face_edges, A.tol), A.tol)
    face_keys = set()
    for e in face_edges:
        face_keys.add(edge_key(e, A.tol))
        face_keys.add(edge_key(e.reversed(), A.tol))
    wires: dict[tuple, Edge] = {}
    for e in wire_edges:
        k = edge_key(e, A.tol)
        if k in face_keys or k in wires or edge_key(e.reversed(), A.tol) in wires:
            continue
        wires[k] = e
    result_edges = face_edges + list(wires.values())
    taken = {v for e in result_edges for v in (e.start, e.end)}
    cand: list[Point] = [q for R in regs for q in R.point_faces]
    cand += sorted({v for p in A.pieces for v in (p.edge.start, p.edge.end)} - taken)
    partial = ArcRegion(tuple(faces.faces) + tuple(_wire_faces(list(wires.values()))))
    keep = [q for q in cand
            if q not in taken and all(_closed_in(R, q, A.on_tol) for R in regs)
            and (partial.is_empty() or partial.distance(q) > A.on_tol)]
    points = _distinct_points(keep, A.on_tol)
    return ArcRegion(partial.faces + tuple(Face(point=q) for q in points))


def union_regions(regions: Sequence[Geometry]) -> ArcRegion:
    """Pointwise union; zero-area pieces touching a 2D part are absorbed."""
    regs = [as_region(R) for R in regions if not as_region(R).is_empty()]
    if not regs:
        return ArcRegion()
    if len(regs) == 1:
        return regs[0]
    A = _build(regs)
    m = len(regs)
    face_edges: list[Edge] = []
    wire_edges: list[Edge] = []
    for k, p in enumerate(A.pieces):
        st = A.status[k]
        others = [j for j in range(m) if j != p.region]
        if p.on_loop:
            if all(st[j] in (OUT, WIRE) or (st[j] == SAME and j > p.region) for j in others):
                face_edges.append(p.edge)
        elif all(st[j] == OUT or (st[j] == WIRE and j > p.region) for j in others):
            wire_edges.append(p.edge)
    faces = faces_from_loops(trace_loops(face_edges, A.tol), A.tol)
    wires = _dedupe_both_ways(wire_edges, A.tol)
    partial = ArcRegion(tuple(faces.faces) + tuple(_wire_faces(wires)))
    points = _distinct_points([q for R in regs for q in R.point_faces
                               if partial.is_empty() or partial.distance(q) > A.on_tol], A.on_tol)
    return ArcRegion(partial.faces + tuple(Face(point=q) for q in points))


def _distinct_points(pts: list[Point], tol: float) -> list[Point]:
    snap = VertexSnapper(tol)
    out: list[Point] = []
    for q in pts:
        s = snap(q)
        if s not in out:
            out.append(s)
    return out


def _dedupe_both_ways(edges: list[Edge], tol: float) -> list[Edge]:
    seen: dict[tuple, Edge] = {}
    for e in edges:
        k = edge_key(e, tol)
        if k in seen or edge_key(e.reversed(), tol) in seen:
            continue
        seen[k] = e
    return list(seen.values())


class Containment(NamedTuple):
    """Outcome of a containment test; truthy when contained."""

    contained: bool
    witness: Point | None = None

    def __bool__(self) -> bool:
        return self.contained


def region_contains_region(outer: Geometry, inner: Geometry) -> Containment:
    """Whether ``inner`` is a subset of ``outer``; on failure a point of
    ``inner`` outside ``outer`` is returned as witness."""
    R = as_region(outer)
    S = as_region(inner)
    if S.is_empty():
        return Containment(True)
    if R.is_empty():
        return Containment(False, S.vertices()[0])
    A = _build([R, S])
    # every piece of the inner set's edges and every vertex must lie in R
    for k, p in enumerate(A.pieces):
        if p.region == 1 and A.status[k][0] not in CLOSED_IN:
            return Containment(False, p.edge.point_at(0.5))
    for q in S.vertices():
        if not _closed_in(R, q, A.on_tol):
            return Containment(False, q)
    # no boundary piece of R may run through the interior of the inner set
    for k, p in enumerate(A.pieces):
        if p.region != 0 or not p.on_loop or A.status[k][1] != IN:
            continue
        e = p.edge
        m = e.point_at(0.5)
        t = e.tangent_at(0.5)
        delta = min(0.5 * _dist_to_boundary(S, m), 1e-3 * max(e.length(), A.tol))
        return Containment(False, (m[0] + t[1] * delta, m[1] - t[0] * delta))
    return Containment(True)


def _dist_to_boundary(S: ArcRegion, p) -> float:
    return float(kernels.min_dist(p[0], p[1], S.features)[0])


def region_contains_shape(R: Geometry, s: Geometry) -> Containment:
    """Whether every point of ``s`` lies in the region ``R`` (closed sets)."""
    return region_contains_region(R, s)


def symmetric_difference_area(A: Geometry, B: Geometry) -> float:
    """Area of the symmetric difference, via inclusion-exclusion."""
    from .region import area

    return area(A) + area(B) - 2.0 * area(intersect_regions([A, B]))
