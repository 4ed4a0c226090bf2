"""Candidate values for alpha(M) and the exact search over them.

Feasibility can only switch at radii where offset curves of input features
become tangent or concurrent.  Every feature is modelled as a circle
(vertices are circles of radius 0, arcs keep their radius) or as a line
(the support of a straight edge).  The families enumerated here:

* ``pair``: half the distance between two features.
* ``triple``: a point at common distance R from three features; yields the
  radius R (three offsets of T meet) and R/2 (three offsets of T grown by r
  meet, i.e. a hole of the grown set closes).
* ``on-edge``: a point on the support line of an edge at common distance R
  from two features; yields R/2 (two grown offsets meet on that edge).

Triple roots are found by sampling R on a grid and refining sign changes, so
roots closer together than the grid spacing can be missed; the exact search
detects that case and falls back to bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Arc, Segment
from .multimiddle import MultiInput, decide

GRID = 129


@dataclass(frozen=True)
class _Feature:
    set_index: int
    kind: str  # "circle" or "line"
    a: float  # circle: cx, line: nx
    b: float  # circle: cy, line: ny
    c: float  # circle: radius, line: offset (n . x = c)
    label: str


def _features(M: MultiInput) -> list[_Feature]:
    out: list[_Feature] = []
    for i, R in enumerate(M.sets):
        seen = set()
        scale = max(R.diameter, 1.0)
        for v in R.vertices():
            key = (round(v[0] / scale, 10), round(v[1] / scale, 10))
            if key in seen:
                continue
            seen.add(key)
            out.append(_Feature(i, "circle", v[0], v[1], 0.0, f"A{i + 1} vertex ({v[0]:.6g}, {v[1]:.6g})"))
        lines, circles = set(), set()
        for e in R.edges():
            if isinstance(e, Segment):
                dx, dy = e.q[0] - e.p[0], e.q[1] - e.p[1]
                L = math.hypot(dx, dy)
                if L == 0:
                    continue
                nx, ny = -dy / L, dx / L
                if nx < 0 or (nx == 0 and ny < 0):
                    nx, ny = -nx, -ny
                c = nx * e.p[0] + ny * e.p[1]
                key = (round(nx, 10), round(ny, 10), round(c / scale, 10))
                if key not in lines:
                    lines.add(key)
                    out.append(_Feature(i, "line", nx, ny, c, f"A{i + 1} edge line {e.p}-{e.q}"))
            elif isinstance(e, Arc):
                key = (round(e.center[0] / scale, 10), round(e.center[1] / scale, 10), round(e.radius / scale, 10))
                if key not in circles:
                    circles.add(key)
                    out.append(_Feature(i, "circle", e.center[0], e.center[1], e.radius,
                                        f"A{i + 1} arc circle {e.center} r={e.radius:.6g}"))
    return out


def _pair_distances(f: _Feature, g: _Feature) -> list[float]:
    if f.kind == "circle" and g.kind == "circle":
        c = math.hypot(f.a - g.a, f.b - g.b)
        return [abs(c - f.c - g.c), c + f.c + g.c, abs(c - abs(f.c - g.c))]
    if f.kind == "line" and g.kind == "line":
        if abs(f.a * g.b - f.b * g.a) > 1e-12:
            return []
        sgn = 1.0 if f.a * g.a + f.b * g.b > 0 else -1.0
        return [abs(f.c - sgn * g.c)]
    ln, ci = (f, g) if f.kind == "line" else (g, f)
    s = abs(ln.a * ci.a + ln.b * ci.b - ln.c)
    return [abs(s - ci.c), s + ci.c]


# --- offsets as functions of R -------------------------------------------------

def _offsets(f: _Feature):
    """Offset curves at distance R as (kind, a, b, c0, c1): circle radius or
    line offset ``c0 + c1 * R``."""
    if f.kind == "line":
        return [("line", f.a, f.b, f.c, 1.0), ("line", f.a, f.b, f.c, -1.0)]
    if f.c == 0:
        return [("circle", f.a, f.b, 0.0, 1.0)]
    return [("circle", f.a, f.b, f.c, 1.0), ("circle", f.a, f.b, -f.c, 1.0), ("circle", f.a, f.b, f.c, -1.0)]


def _meet(o1, o2, R: np.ndarray) -> list[np.ndarray]:
    """Intersection branches of two offsets over the radius grid R; each
    branch is an (len(R), 2) array with NaN where the curves miss."""
    if o1[0] == "line" and o2[0] == "circle":
        o1, o2 = o2, o1
    k1, a1, b1, c01, c11 = o1
    k2, a2, b2, c02, c12 = o2
    v1 = c01 + c11 * R
    v2 = c02 + c12 * R
    with np.errstate(invalid="ignore", divide="ignore"):
        if k1 == "line":  # both lines
            det = a1 * b2 - a2 * b1
            if abs(det) < 1e-14:
                return []
            x = (v1 * b2 - v2 * b1) / det
            y = (a1 * v2 - a2 * v1) / det
            return [np.stack([x, y], axis=1)]
        if k2 == "line":  # circle (a1, b1, v1) and line n . x = v2
            v1 = np.where(v1 < 0, np.nan, v1)
            s = a2 * a1 + b2 * b1 - v2
            h = np.sqrt(v1 * v1 - s * s)
            fx, fy = a1 - s * a2, b1 - s * b2
            return [np.stack([fx - h * b2, fy + h * a2], axis=1), np.stack([fx + h * b2, fy - h * a2], axis=1)]
        v1 = np.where(v1 < 0, np.nan, v1)
        v2 = np.where(v2 < 0, np.nan, v2)
        dx, dy = a2 - a1, b2 - b1
        D = math.hypot(dx, dy)
        if D < 1e-14:
            return []
        t = (D * D + v1 * v1 - v2 * v2) / (2 * D)
        h = np.sqrt(v1 * v1 - t * t)
        ux, uy = dx / D, dy / D
        mx, my = a1 + t * ux, b1 + t * uy
        return [np.stack([mx - h * uy, my + h * ux], axis=1), np.stack([mx + h * uy, my - h * ux], axis=1)]


def _dist_all(X: np.ndarray, feats: list[_Feature]) -> np.ndarray:
    """Unsigned distances from points X (S, 2) to every feature: (n, S)."""
    A = np.array([[f.a, f.b, f.c] for f in feats])
    is_line = np.array([f.kind == "line" for f in feats])
    out = np.empty((len(feats), len(X)))
    if is_line.any():
        L = A[is_line]
        out[is_line] = np.abs(L[:, :1] * X[:, 0] + L[:, 1:2] * X[:, 1] - L[:, 2:3])
    if (~is_line).any():
        C = A[~is_line]
        r = np.hypot(X[:, 0] - C[:, :1], X[:, 1] - C[:, 1:2])
        out[~is_line] = np.abs(r - C[:, 2:3])
    return out


def _signed_line(X: np.ndarray, feats: list[_Feature]) -> np.ndarray:
    A = np.array([[f.a, f.b, f.c] for f in feats])
    return A[:, :1] * X[:, 0] + A[:, 1:2] * X[:, 1] - A[:, 2:3]


def _table(feats: list[_Feature]) -> tuple[np.ndarray, np.ndarray]:
    return np.array([[f.a, f.b, f.c] for f in feats]), np.array([f.kind == "line" for f in feats])


def _dist_rows(X: np.ndarray, A: np.ndarray, is_line: np.ndarray) -> np.ndarray:
    """Distance from X[s] to the feature in row s of A."""
    lin = np.abs(A[:, 0] * X[:, 0] + A[:, 1] * X[:, 1] - A[:, 2])
    circ = np.abs(np.hypot(X[:, 0] - A[:, 0], X[:, 1] - A[:, 1]) - A[:, 2])
    return np.where(is_line, lin, circ)


def _roots(R: np.ndarray, F: np.ndarray, fun) -> list[tuple[int, float]]:
    """Sign changes of each row of F (n, S) along R, refined by bisection.

    ``fun(ks, xs)`` evaluates rows ``ks`` at radii ``xs`` in one call.  Only
    interior points are re-evaluated; the grid ends can sit exactly on a
    tangency where the offsets just meet and rounding makes them miss.
    Rows that vanish along the whole grid are degenerate (e.g. a line that is
    the bisector of two vertices) and yield nothing."""
    flat = np.all(~np.isfinite(F) | (np.abs(F) <= 1e-9 * R[-1]), axis=1)
    F = np.where(flat[:, None], np.nan, F)
    s = np.sign(F)
    ch = (s[:, :-1] * s[:, 1:] < 0) & np.isfinite(F[:, :-1]) & np.isfinite(F[:, 1:])
    ks, js = np.nonzero(ch)
    out = []
    if len(ks):
        a, b, sa = R[js].copy(), R[js + 1].copy(), s[ks, js]
        live = np.ones(len(ks), bool)
        width = 1e-14 * R[-1]
        for _ in range(80):
            m = 0.5 * (a + b)
            live &= (m > a) & (m < b) & (b - a > width)
            if not live.any():
                break
            fm = fun(ks, m)
            ok = np.isfinite(fm)
            live &= ok
            hit = live & (fm == 0)
            a[hit] = b[hit] = m[hit]
            live &= ~hit
            left = live & (np.sign(fm) == sa)
            a[left] = m[left]
            right = live & ~left
            b[right] = m[right]
        out = [(int(k), float(r)) for k, r in zip(ks, 0.5 * (a + b))]
    zero = np.isfinite(F) & (F == 0)
    for k, j in zip(*np.nonzero(zero)):
        out.append((int(k), float(R[j])))
    return out


# --- candidates ----------------------------------------------------------------

@dataclass(frozen=True)
class CriticalCandidates:
    """Candidate radii in [d/2, d] (absolute), their alpha fractions and the
    feature tuple behind each."""

    values: tuple
    fractions: tuple
    provenance: tuple
    d: float

    def __len__(self) -> int:
        return len(self.values)


def critical_alphas(M: MultiInput, grid: int = GRID) -> CriticalCandidates:
    d = M.d
    feats = _features(M)
    raw: list[tuple[float, tuple]] = [(d / 2, ("sentinel",)), (d, ("sentinel",))]

    def add(r: float, prov: tuple) -> None:
        if d / 2 - 1e-12 * d <= r <= d + 1e-12 * d:
            raw.append((float(min(max(r, d / 2), d)), prov))

    n = len(feats)
    for i in range(n):
        for j in range(i + 1, n):
            for D in _pair_distances(feats[i], feats[j]):
                add(D / 2, ("pair", feats[i].label, feats[j].label))

    R = np.linspace(d / 2, 2 * d, grid)
    line_idx = [k for k, f in enumerate(feats) if f.kind == "line"]
    line_feats = [feats[k] for k in line_idx]
    FA, FL = _table(feats)
    LA = FA[line_idx] if line_idx else FA[:0]
    for i in range(n):
        for j in range(i + 1, n):
            for o1 in _offsets(feats[i]):
                for o2 in _offsets(feats[j]):
                    for b, X in enumerate(_meet(o1, o2, R)):
                        if not np.isfinite(X).any():
                            continue

                        def point(x: np.ndarray, o1=o1, o2=o2, b=b) -> np.ndarray:
                            return _meet(o1, o2, x)[b]

                        def fun(ks: np.ndarray, x: np.ndarray, point=point) -> np.ndarray:
                            return _dist_rows(point(x), FA[ks], FL[ks]) - x

                        F = _dist_all(X, feats) - R
                        F[[i, j]] = np.nan
                        for k, root in _roots(R, F, fun):
                            if k > j:  # each unordered triple once
                                prov = (feats[i].label, feats[j].label, feats[k].label)
                                add(root, ("triple",) + prov)
                                add(root / 2, ("triple-grown",) + prov)
                        if line_feats:
                            G = _signed_line(X, line_feats)
                            for q, k in enumerate(line_idx):
                                if k in (i, j):
                                    G[q] = np.nan

                            def gfun(qs: np.ndarray, x: np.ndarray, point=point) -> np.ndarray:
                                A = LA[qs]
                                P = point(x)
                                return A[:, 0] * P[:, 0] + A[:, 1] * P[:, 1] - A[:, 2]

                            for q, root in _roots(R, G, gfun):
                                add(root / 2, ("on-edge", feats[i].label, feats[j].label, line_feats[q].label))

    raw.sort(key=lambda t: t[0])
    values, provs = [], []
    for r, prov in raw:
        if values and r - values[-1] <= 1e-9 * d:
            if prov[0] == "sentinel":
                provs[-1] = prov
            continue
        values.append(r)
        provs.append(prov)
    # the sentinels must stay exactly at d/2 and d
    values[0], values[-1] = d / 2, d
    return CriticalCandidates(tuple(values), tuple(v / d for v in values), tuple(provs), d)


# --- exact search --------------------------------------------------------------

@dataclass(frozen=True)
class ExactAlpha:
    alpha: float
    radius: float
    provenance: tuple
    fallback: bool
    candidates: int

    def __float__(self) -> float:
        return self.alpha


def exact_alpha(M: MultiInput, eps_root: float | None = None,
                candidates: CriticalCandidates | None = None) -> ExactAlpha:
    """Smallest feasible candidate, located by binary search with ``decide``.

    The interval below the chosen candidate is probed; if it already holds a
    feasible value a root was missed and the answer is refined by bisection
    to ``eps_root`` (absolute, default ``1e-10 d``)."""
    C = candidates or critical_alphas(M)
    d = M.d
    eps_root = 1e-10 * d if eps_root is None else eps_root
    step = eps_root / d
    fr = C.fractions
    lo, hi = -1, len(fr) - 1  # fr[hi] is feasible (alpha = 1 always is)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if decide(M, min(fr[mid] + step, 1.0)):
            hi = mid
        else:
            lo = mid
    if hi == 0:
        return ExactAlpha(fr[0], C.values[0], C.provenance[0], False, len(C))
    prev, cur = fr[hi - 1], fr[hi]
    probes = [0.5 * (prev + cur), cur - max(1e-6, 1e3 * step)]
    feasible = [p for p in probes if p > prev + step and decide(M, p)]
    if not feasible:
        return ExactAlpha(cur, C.values[hi], C.provenance[hi], False, len(C))
    a, b = prev, min(feasible)
    while (b - a) > step:
        m = 0.5 * (a + b)
        if decide(M, m):
            b = m
        else:
            a = m
    return ExactAlpha(b, b * d, ("bisection",), True, len(C))


__all__ = ["CriticalCandidates", "ExactAlpha", "critical_alphas", "exact_alpha"]
