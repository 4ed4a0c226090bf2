"""Pure numpy implementation of the distance / parity kernels.

Feature table rows (``NCOL`` columns)::

    kind, x0, y0, x1, y1, cx, cy, r, a0, sweep

``kind`` is 0 for a point (x0, y0), 1 for a segment (x0, y0)-(x1, y1) and 2
for a circular arc (center cx, cy, radius r, start angle a0, signed sweep).
Arc rows also carry their endpoints in x0..y1.

Parity table rows (``PCOL`` columns)::

    kind, x0, y0, x1, y1, cx, cy, r, side

Segments (kind 1) and y-monotone arc pieces (kind 2).  ``side`` is +1 when the
arc piece lies on the right half of its circle and -1 on the left half.
"""
from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi
ANG_EPS = 1e-12
CHUNK = 4096


def _in_sweep(phi, a0, sw):
    off = np.mod((phi - a0) * np.where(sw < 0, -1.0, 1.0), TWO_PI)
    asw = np.abs(sw)
    return (asw >= TWO_PI - ANG_EPS) | (off <= asw + ANG_EPS) | (off >= TWO_PI - ANG_EPS)


def _sweep_offset(phi, a0, sw):
    return np.mod((phi - a0) * np.where(sw < 0, -1.0, 1.0), TWO_PI)


def _seg_dist(px, py, x0, y0, x1, y1):
    dx = x1 - x0
    dy = y1 - y0
    ll = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(ll > 0, ((px - x0) * dx + (py - y0) * dy) / np.where(ll > 0, ll, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(px - (x0 + t * dx), py - (y0 + t * dy))


def _dist_matrix(P, F):
    """Distances from points ``P`` (k, 2) to features ``F`` (n, NCOL) -> (k, n)."""
    px = P[:, 0:1]
    py = P[:, 1:2]
    kind = F[:, 0]
    x0, y0, x1, y1 = F[:, 1], F[:, 2], F[:, 3], F[:, 4]
    cx, cy, r, a0, sw = F[:, 5], F[:, 6], F[:, 7], F[:, 8], F[:, 9]
    d_pt = np.hypot(px - x0, py - y0)
    d_seg = _seg_dist(px, py, x0, y0, x1, y1)
    dx = px - cx
    dy = py - cy
    rho = np.hypot(dx, dy)
    phi = np.arctan2(dy, dx)
    wedge = _in_sweep(phi, a0, sw) & (rho > 0)
    d_end = np.minimum(d_pt, np.hypot(px - x1, py - y1))
    d_arc = np.where(wedge, np.abs(rho - r), np.where(rho > 0, d_end, r))
    return np.where(kind == 0, d_pt, np.where(kind == 1, d_seg, d_arc))


def min_dist(px, py, F):
    if len(F) == 0:
        return math.inf, -1
    d = _dist_matrix(np.array([[px, py]], dtype=float), F)[0]
    i = int(np.argmin(d))
    return float(d[i]), i


def min_dist_many(P, F):
    P = np.asarray(P, dtype=float).reshape(-1, 2)
    k = len(P)
    out = np.full(k, np.inf)
    idx = np.full(k, -1, dtype=np.int64)
    if len(F) == 0 or k == 0:
        return out, idx
    for s in range(0, k, CHUNK):
        D = _dist_matrix(P[s:s + CHUNK], F)
        j = np.argmin(D, axis=1)
        idx[s:s + CHUNK] = j
        out[s:s + CHUNK] = D[np.arange(len(j)), j]
    return out, idx


def _crossings(P, T):
    px = P[:, 0:1]
    py = P[:, 1:2]
    kind = T[:, 0]
    x0, y0, x1, y1 = T[:, 1], T[:, 2], T[:, 3], T[:, 4]
    cx, cy, r, side = T[:, 5], T[:, 6], T[:, 7], T[:, 8]
    crosses = (y0 > py) != (y1 > py)
    dy = y1 - y0
    with np.errstate(invalid="ignore", divide="ignore"):
        x_seg = x0 + (py - y0) * (x1 - x0) / np.where(dy != 0, dy, 1.0)
    h = r * r - (py - cy) ** 2
    x_arc = cx + side * np.sqrt(np.maximum(h, 0.0))
    xint = np.where(kind == 1, x_seg, x_arc)
    return np.count_nonzero(crosses & (xint > px), axis=1)


def inside(px, py, T):
    if len(T) == 0:
        return False
    return bool(_crossings(np.array([[px, py]], dtype=float), T)[0] % 2)


def inside_many(P, T):
    P = np.asarray(P, dtype=float).reshape(-1, 2)
    out = np.zeros(len(P), dtype=bool)
    if len(T) == 0 or len(P) == 0:
        return out
    for s in range(0, len(P), CHUNK):
        out[s:s + CHUNK] = _crossings(P[s:s + CHUNK], T) % 2 == 1
    return out


# --- upper bounds of a feature's distance over a piece of curve / a cell ---------

def _point_arc_range(qx, qy, cx, cy, r, a0, sw):
    """Min and max distance from points q (vector) to the arc (scalars)."""
    e0 = np.array([cx + r * math.cos(a0), cy + r * math.sin(a0)])
    e1 = np.array([cx + r * math.cos(a0 + sw), cy + r * math.sin(a0 + sw)])
    dx = qx - cx
    dy = qy - cy
    rho = np.hypot(dx, dy)
    d0 = np.hypot(qx - e0[0], qy - e0[1])
    d1 = np.hypot(qx - e1[0], qy - e1[1])
    near_in = _in_sweep(np.arctan2(dy, dx), a0, sw)
    far_in = _in_sweep(np.arctan2(-dy, -dx), a0, sw)
    dmin = np.where(near_in, np.abs(rho - r), np.minimum(d0, d1))
    dmax = np.where(far_in, rho + r, np.maximum(d0, d1))
    dmin = np.where(rho > 0, dmin, r)
    dmax = np.where(rho > 0, dmax, r)
    return dmin, dmax


def _wedge_ok(cx, cy, a0, sw, xs, ys, rho_min):
    """True where every hull corner (xs, ys columns) is seen inside the arc's wedge."""
    full = np.abs(sw) >= TWO_PI - ANG_EPS
    offs = _sweep_offset(np.arctan2(ys - cy[:, None], xs - cx[:, None]), a0[:, None], sw[:, None])
    inwedge = np.all((offs <= np.abs(sw)[:, None] + ANG_EPS), axis=1)
    spread = offs.max(axis=1) - offs.min(axis=1)
    return (rho_min > 0) & (full | (inwedge & (spread < math.pi)))


def _hull_ub_points(F, xs, ys):
    """max over hull corners of the distance to each feature treated as convex."""
    P = np.stack([xs, ys], axis=1)
    return _dist_matrix(P, F).max(axis=0)


def _endpoint_ub(F, xs, ys):
    P = np.stack([xs, ys], axis=1)
    d0 = np.hypot(P[:, 0:1] - F[:, 1], P[:, 1:2] - F[:, 2]).max(axis=0)
    d1 = np.hypot(P[:, 0:1] - F[:, 3], P[:, 1:2] - F[:, 4]).max(axis=0)
    return np.minimum(d0, d1)


def segment_ub(ax, ay, bx, by, F):
    """Upper bound of min_f dist(x, f) over x on segment [a, b]."""
    if len(F) == 0:
        return math.inf
    xs = np.array([ax, bx])
    ys = np.array([ay, by])
    ub = _hull_ub_points(F, xs, ys)
    arcs = F[:, 0] == 2
    if np.any(arcs):
        A = F[arcs]
        cx, cy, r, a0, sw = A[:, 5], A[:, 6], A[:, 7], A[:, 8], A[:, 9]
        rho_a = np.hypot(ax - cx, ay - cy)
        rho_b = np.hypot(bx - cx, by - cy)
        rho_min = _seg_dist(cx, cy, ax, ay, bx, by)
        exact = np.maximum(np.maximum(np.abs(rho_a - r), np.abs(rho_b - r)), r - rho_min)
        ok = _wedge_ok(cx, cy, a0, sw, np.tile(xs, (len(A), 1)), np.tile(ys, (len(A), 1)), rho_min)
        half = 0.5 * math.hypot(bx - ax, by - ay)
        mid = _dist_matrix(np.array([[0.5 * (ax + bx), 0.5 * (ay + by)]]), A)[0] + half
        fallback = np.minimum(mid, _endpoint_ub(A, xs, ys))
        ub[arcs] = np.where(ok, exact, fallback)
    return float(ub.min())


def arc_ub(cx, cy, r, a0, sw, F):
    """Upper bound of min_f dist(x, f) over x on a sub-arc with |sweep| <= pi/2."""
    if len(F) == 0:
        return math.inf
    a1 = a0 + sw
    am = a0 + 0.5 * sw
    p0 = (cx + r * math.cos(a0), cy + r * math.sin(a0))
    p1 = (cx + r * math.cos(a1), cy + r * math.sin(a1))
    ra = r / math.cos(0.5 * sw)
    apex = (cx + ra * math.cos(am), cy + ra * math.sin(am))
    xs = np.array([p0[0], p1[0], apex[0]])
    ys = np.array([p0[1], p1[1], apex[1]])
    kind = F[:, 0]
    ub = _hull_ub_points(F, xs, ys)
    pts = kind == 0
    if np.any(pts):
        _, dmax = _point_arc_range(F[pts, 1], F[pts, 2], cx, cy, r, a0, sw)
        ub[pts] = dmax
    arcs = kind == 2
    if np.any(arcs):
        A = F[arcs]
        fcx, fcy, fr, fa0, fsw = A[:, 5], A[:, 6], A[:, 7], A[:, 8], A[:, 9]
        rmin, rmax = _point_arc_range(fcx, fcy, cx, cy, r, a0, sw)
        tri_min = _tri_dist(fcx, fcy, xs, ys)
        ok = _wedge_ok(fcx, fcy, fa0, fsw, np.tile(xs, (len(A), 1)), np.tile(ys, (len(A), 1)), tri_min)
        exact = np.maximum(rmax - fr, fr - rmin)
        conc = np.hypot(fcx - cx, fcy - cy) <= 1e-12 * (r + fr)
        conc_ok = conc & _in_sweep(np.full(len(A), a0), fa0, fsw) & _in_sweep(np.full(len(A), a1), fa0, fsw) & (
            np.abs(_sweep_offset(np.full(len(A), a1), fa0, fsw) - _sweep_offset(np.full(len(A), a0), fa0, fsw))
            <= abs(sw) + 1e-9)
        mx, my = cx + r * math.cos(am), cy + r * math.sin(am)
        lip = _dist_matrix(np.array([[mx, my]]), A)[0] + 0.5 * r * abs(sw)
        _, e0max = _point_arc_range(A[:, 1], A[:, 2], cx, cy, r, a0, sw)
        _, e1max = _point_arc_range(A[:, 3], A[:, 4], cx, cy, r, a0, sw)
        fallback = np.minimum(lip, np.minimum(e0max, e1max))
        res = np.where(ok, exact, fallback)
        res = np.where(conc_ok, np.abs(r - fr), res)
        ub[arcs] = res
    return float(ub.min())


def _tri_dist(qx, qy, xs, ys):
    """Distance from points q to the filled triangle (xs, ys); 0 inside."""
    d = np.minimum(np.minimum(_seg_dist(qx, qy, xs[0], ys[0], xs[1], ys[1]),
                              _seg_dist(qx, qy, xs[1], ys[1], xs[2], ys[2])),
                   _seg_dist(qx, qy, xs[2], ys[2], xs[0], ys[0]))
    c0 = (xs[1] - xs[0]) * (qy - ys[0]) - (ys[1] - ys[0]) * (qx - xs[0])
    c1 = (xs[2] - xs[1]) * (qy - ys[1]) - (ys[2] - ys[1]) * (qx - xs[1])
    c2 = (xs[0] - xs[2]) * (qy - ys[2]) - (ys[0] - ys[2]) * (qx - xs[2])
    inside_t = ((c0 >= 0) & (c1 >= 0) & (c2 >= 0)) | ((c0 <= 0) & (c1 <= 0) & (c2 <= 0))
    return np.where(inside_t, 0.0, d)


def cell_bounds(x, y, h, F):
    """Bounds of min_f dist over the square cell centered (x, y) with half side h.

    Returns ``(min_ub, count, idx)`` where ``count`` is the number of features
    whose lower bound does not exceed ``min_ub`` and ``idx`` one of them.
    """
    if len(F) == 0:
        return math.inf, 0, -1
    hd = h * math.sqrt(2.0)
    xs = np.array([x - h, x + h, x + h, x - h])
    ys = np.array([y - h, y - h, y + h, y + h])
    dc = _dist_matrix(np.array([[x, y]]), F)[0]
    lb = np.maximum(dc - hd, 0.0)
    ub = _hull_ub_points(F, xs, ys)
    arcs = F[:, 0] == 2
    if np.any(arcs):
        A = F[arcs]
        fcx, fcy, fr = A[:, 5], A[:, 6], A[:, 7]
        ddx = np.maximum(np.abs(fcx - x) - h, 0.0)
        ddy = np.maximum(np.abs(fcy - y) - h, 0.0)
        rho_min = np.hypot(ddx, ddy)
        rho_max = np.hypot(xs[None, :] - fcx[:, None], ys[None, :] - fcy[:, None]).max(axis=1)
        ok = _wedge_ok(fcx, fcy, A[:, 8], A[:, 9], np.tile(xs, (len(A), 1)), np.tile(ys, (len(A), 1)), rho_min)
        exact = np.maximum(rho_max - fr, fr - rho_min)
        fallback = np.minimum(dc[arcs] + hd, _endpoint_ub(A, xs, ys))
        ub[arcs] = np.where(ok, exact, fallback)
    m = float(ub.min())
    near = np.flatnonzero(lb <= m)
    return m, int(len(near)), int(near[0]) if len(near) else -1


def feature_dists(px, py, F):
    """Distance from one point to every feature."""
    if len(F) == 0:
        return np.zeros(0)
    return _dist_matrix(np.array([[px, py]], dtype=float), F)[0]
