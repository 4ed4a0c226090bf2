# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled distance / parity kernels.  Same tables and semantics as _pykernels."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot, atan2, fmod, fabs, cos, sin, M_PI, INFINITY

cnp.import_array()

cdef double TWO_PI = 2.0 * M_PI
cdef double ANG_EPS = 1e-12


cdef inline double _off(double phi, double a0, double sw) nogil:
    cdef double o = (phi - a0) * (-1.0 if sw < 0 else 1.0)
    o = fmod(o, TWO_PI)
    if o < 0:
        o += TWO_PI
    return o


cdef inline bint _in_sweep(double phi, double a0, double sw) nogil:
    cdef double asw = fabs(sw)
    if asw >= TWO_PI - ANG_EPS:
        return True
    cdef double o = _off(phi, a0, sw)
    return o <= asw + ANG_EPS or o >= TWO_PI - ANG_EPS


cdef inline double _seg_dist(double px, double py, double x0, double y0,
                             double x1, double y1) nogil:
    cdef double dx = x1 - x0, dy = y1 - y0
    cdef double ll = dx * dx + dy * dy
    cdef double t = 0.0
    if ll > 0:
        t = ((px - x0) * dx + (py - y0) * dy) / ll
        if t < 0:
            t = 0.0
        elif t > 1:
            t = 1.0
    return hypot(px - (x0 + t * dx), py - (y0 + t * dy))


cdef inline double _feat_dist(double px, double py, const double[:, :] F, Py_ssize_t j) nogil:
    cdef int kind = <int>F[j, 0]
    cdef double dx, dy, rho
    if kind == 0:
        return hypot(px - F[j, 1], py - F[j, 2])
    if kind == 1:
        return _seg_dist(px, py, F[j, 1], F[j, 2], F[j, 3], F[j, 4])
    dx = px - F[j, 5]
    dy = py - F[j, 6]
    rho = hypot(dx, dy)
    if rho <= 0:
        return F[j, 7]
    if _in_sweep(atan2(dy, dx), F[j, 8], F[j, 9]):
        return fabs(rho - F[j, 7])
    return min(hypot(px - F[j, 1], py - F[j, 2]), hypot(px - F[j, 3], py - F[j, 4]))


cdef double _min_dist(double px, double py, const double[:, :] F, Py_ssize_t* idx) nogil:
    cdef Py_ssize_t j, n = F.shape[0]
    cdef double best = INFINITY, d
    idx[0] = -1
    for j in range(n):
        d = _feat_dist(px, py, F, j)
        if d < best:
            best = d
            idx[0] = j
    return best


def min_dist(double px, double py, const double[:, :] F):
    cdef Py_ssize_t idx
    cdef double d = _min_dist(px, py, F, &idx)
    return d, idx


def min_dist_many(P, const double[:, :] F):
    cdef const double[:, :] Pv = np.ascontiguousarray(P, dtype=np.float64).reshape(-1, 2)
    cdef Py_ssize_t k = Pv.shape[0], i, j
    out = np.full(k, np.inf)
    idx = np.full(k, -1, dtype=np.int64)
    cdef double[:] ov = out
    cdef long long[:] iv = idx
    with nogil:
        for i in range(k):
            ov[i] = _min_dist(Pv[i, 0], Pv[i, 1], F, &j)
            iv[i] = j
    return out, idx


cdef bint _inside(double px, double py, const double[:, :] T) nogil:
    cdef Py_ssize_t j, n = T.shape[0]
    cdef int cnt = 0
    cdef double y0, y1, xint, h
    for j in range(n):
        y0 = T[j, 2]
        y1 = T[j, 4]
        if (y0 > py) == (y1 > py):
            continue
        if <int>T[j, 0] == 1:
            xint = T[j, 1] + (py - y0) * (T[j, 3] - T[j, 1]) / (y1 - y0)
        else:
            h = T[j, 7] * T[j, 7] - (py - T[j, 6]) * (py - T[j, 6])
            if h < 0:
                h = 0.0
            xint = T[j, 5] + T[j, 8] * sqrt(h)
        if xint > px:
            cnt += 1
    return cnt % 2 == 1


def inside(double px, double py, const double[:, :] T):
    return bool(_inside(px, py, T))


def inside_many(P, const double[:, :] T):
    cdef const double[:, :] Pv = np.ascontiguousarray(P, dtype=np.float64).reshape(-1, 2)
    cdef Py_ssize_t k = Pv.shape[0], i
    out = np.zeros(k, dtype=bool)
    cdef cnp.npy_bool[:] ov = out
    with nogil:
        for i in range(k):
            ov[i] = _inside(Pv[i, 0], Pv[i, 1], T)
    return out


cdef void _point_arc_range(double qx, double qy, double cx, double cy, double r,
                           double a0, double sw, double* dmin, double* dmax) nogil:
    cdef double dx = qx - cx, dy = qy - cy
    cdef double rho = hypot(dx, dy)
    cdef double d0, d1
    if rho <= 0:
        dmin[0] = r
        dmax[0] = r
        return
    d0 = hypot(qx - cx - r * cos(a0), qy - cy - r * sin(a0))
    d1 = hypot(qx - cx - r * cos(a0 + sw), qy - cy - r * sin(a0 + sw))
    dmin[0] = fabs(rho - r) if _in_sweep(atan2(dy, dx), a0, sw) else min(d0, d1)
    dmax[0] = rho + r if _in_sweep(atan2(-dy, -dx), a0, sw) else max(d0, d1)


cdef bint _wedge_ok(const double[:, :] F, Py_ssize_t j, double* xs, double* ys,
                    int m, double rho_min) nogil:
    cdef double cx = F[j, 5], cy = F[j, 6], a0 = F[j, 8], sw = F[j, 9]
    cdef double o, lo = INFINITY, hi = -INFINITY
    cdef int i
    if rho_min <= 0:
        return False
    if fabs(sw) >= TWO_PI - ANG_EPS:
        return True
    for i in range(m):
        o = _off(atan2(ys[i] - cy, xs[i] - cx), a0, sw)
        if o > fabs(sw) + ANG_EPS:
            return False
        lo = min(lo, o)
        hi = max(hi, o)
    return hi - lo < M_PI


cdef double _hull_ub(const double[:, :] F, Py_ssize_t j, double* xs, double* ys, int m) nogil:
    cdef double u = 0.0
    cdef int i
    for i in range(m):
        u = max(u, _feat_dist(xs[i], ys[i], F, j))
    return u


cdef double _endpoint_ub(const double[:, :] F, Py_ssize_t j, double* xs, double* ys, int m) nogil:
    cdef double u0 = 0.0, u1 = 0.0
    cdef int i
    for i in range(m):
        u0 = max(u0, hypot(xs[i] - F[j, 1], ys[i] - F[j, 2]))
        u1 = max(u1, hypot(xs[i] - F[j, 3], ys[i] - F[j, 4]))
    return min(u0, u1)


def segment_ub(double ax, double ay, double bx, double by, const double[:, :] F):
    cdef Py_ssize_t j, n = F.shape[0]
    cdef double xs[2]
    cdef double ys[2]
    cdef double best = INFINITY, u, cx, cy, r, rmin, half, mx, my
    xs[0] = ax; xs[1] = bx
    ys[0] = ay; ys[1] = by
    half = 0.5 * hypot(bx - ax, by - ay)
    mx = 0.5 * (ax + bx)
    my = 0.5 * (ay + by)
    with nogil:
        for j in range(n):
            if <int>F[j, 0] != 2:
                u = _hull_ub(F, j, xs, ys, 2)
            else:
                cx = F[j, 5]; cy = F[j, 6]; r = F[j, 7]
                rmin = _seg_dist(cx, cy, ax, ay, bx, by)
                if _wedge_ok(F, j, xs, ys, 2, rmin):
                    u = max(max(fabs(hypot(ax - cx, ay - cy) - r), fabs(hypot(bx - cx, by - cy) - r)), r - rmin)
                else:
                    u = min(_feat_dist(mx, my, F, j) + half, _endpoint_ub(F, j, xs, ys, 2))
            if u < best:
                best = u
    return best


cdef double _tri_dist(double qx, double qy, double* xs, double* ys) nogil:
    cdef double c0 = (xs[1] - xs[0]) * (qy - ys[0]) - (ys[1] - ys[0]) * (qx - xs[0])
    cdef double c1 = (xs[2] - xs[1]) * (qy - ys[1]) - (ys[2] - ys[1]) * (qx - xs[1])
    cdef double c2 = (xs[0] - xs[2]) * (qy - ys[2]) - (ys[0] - ys[2]) * (qx - xs[2])
    if (c0 >= 0 and c1 >= 0 and c2 >= 0) or (c0 <= 0 and c1 <= 0 and c2 <= 0):
        return 0.0
    return min(min(_seg_dist(qx, qy, xs[0], ys[0], xs[1], ys[1]),
                   _seg_dist(qx, qy, xs[1], ys[1], xs[2], ys[2])),
               _seg_dist(qx, qy, xs[2], ys[2], xs[0], ys[0]))


def arc_ub(double cx, double cy, double r, double a0, double sw, const double[:, :] F):
    cdef Py_ssize_t j, n = F.shape[0]
    cdef double xs[3]
    cdef double ys[3]
    cdef double a1 = a0 + sw, am = a0 + 0.5 * sw
    cdef double ra = r / cos(0.5 * sw)
    cdef double best = INFINITY, u, lo, hi, fr, e0, e1, mx, my, o0, o1
    cdef int kind
    xs[0] = cx + r * cos(a0); ys[0] = cy + r * sin(a0)
    xs[1] = cx + r * cos(a1); ys[1] = cy + r * sin(a1)
    xs[2] = cx + ra * cos(am); ys[2] = cy + ra * sin(am)
    mx = cx + r * cos(am)
    my = cy + r * sin(am)
    with nogil:
        for j in range(n):
            kind = <int>F[j, 0]
            if kind == 0:
                _point_arc_range(F[j, 1], F[j, 2], cx, cy, r, a0, sw, &lo, &u)
            elif kind == 1:
                u = _hull_ub(F, j, xs, ys, 3)
            else:
                fr = F[j, 7]
                if (hypot(F[j, 5] - cx, F[j, 6] - cy) <= 1e-12 * (r + fr)
                        and _in_sweep(a0, F[j, 8], F[j, 9]) and _in_sweep(a1, F[j, 8], F[j, 9])
                        and fabs(_off(a1, F[j, 8], F[j, 9]) - _off(a0, F[j, 8], F[j, 9])) <= fabs(sw) + 1e-9):
                    u = fabs(r - fr)
                elif _wedge_ok(F, j, xs, ys, 3, _tri_dist(F[j, 5], F[j, 6], xs, ys)):
                    _point_arc_range(F[j, 5], F[j, 6], cx, cy, r, a0, sw, &lo, &hi)
                    u = max(hi - fr, fr - lo)
                else:
                    _point_arc_range(F[j, 1], F[j, 2], cx, cy, r, a0, sw, &lo, &e0)
                    _point_arc_range(F[j, 3], F[j, 4], cx, cy, r, a0, sw, &lo, &e1)
                    u = min(_feat_dist(mx, my, F, j) + 0.5 * r * fabs(sw), min(e0, e1))
            if u < best:
                best = u
    return best


def cell_bounds(double x, double y, double h, const double[:, :] F):
    cdef Py_ssize_t j, n = F.shape[0], idx = -1, count = 0
    cdef double xs[4]
    cdef double ys[4]
    cdef double hd = h * sqrt(2.0)
    cdef double best = INFINITY, u, fr, rmin, rmax, ddx, ddy
    cdef int i
    if n == 0:
        return INFINITY, 0, -1
    lb = np.empty(n)
    cdef double[:] lbv = lb
    xs[0] = x - h; ys[0] = y - h
    xs[1] = x + h; ys[1] = y - h
    xs[2] = x + h; ys[2] = y + h
    xs[3] = x - h; ys[3] = y + h
    with nogil:
        for j in range(n):
            lbv[j] = _feat_dist(x, y, F, j)
            if <int>F[j, 0] != 2:
                u = _hull_ub(F, j, xs, ys, 4)
            else:
                fr = F[j, 7]
                ddx = max(fabs(F[j, 5] - x) - h, 0.0)
                ddy = max(fabs(F[j, 6] - y) - h, 0.0)
                rmin = hypot(ddx, ddy)
                if _wedge_ok(F, j, xs, ys, 4, rmin):
                    rmax = 0.0
                    for i in range(4):
                        rmax = max(rmax, hypot(xs[i] - F[j, 5], ys[i] - F[j, 6]))
                    u = max(rmax - fr, fr - rmin)
                else:
                    u = min(lbv[j] + hd, _endpoint_ub(F, j, xs, ys, 4))
            if u < best:
                best = u
            lbv[j] = max(lbv[j] - hd, 0.0)
        for j in range(n):
            if lbv[j] <= best:
                if count == 0:
                    idx = j
                count += 1
    return best, count, idx


def feature_dists(double px, double py, const double[:, :] F):
    cdef Py_ssize_t j, n = F.shape[0]
    out = np.empty(n)
    cdef double[:] ov = out
    with nogil:
        for j in range(n):
            ov[j] = _feat_dist(px, py, F, j)
    return out
