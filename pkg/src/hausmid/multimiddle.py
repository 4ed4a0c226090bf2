"""Middles of several sets.

``T_alpha = intersection of (A_i + D(alpha d))`` where ``d`` is the largest
pairwise Hausdorff distance.  alpha is feasible when the dilation of
``T_alpha`` by ``alpha d`` covers every input set; ``alpha(M)`` is the
smallest feasible alpha and always lies in [1/2, 1].

All alpha values in this module are fractions of ``d``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .boolean import intersect_regions, region_contains_shape
from .hausdorff import default_eps, hausdorff
from .region import ArcRegion, Geometry, Shape, as_region, dilate, is_convex


@dataclass(frozen=True)
class MultiInput:
    sets: tuple
    pairwise: np.ndarray = field(repr=False)
    d: float

    @classmethod
    def from_sets(cls, sets, eps: float | None = None) -> "MultiInput":
        regs = tuple(as_region(s) for s in sets)
        if len(regs) < 2:
            raise ValueError("need at least two input sets")
        if any(R.is_empty() for R in regs):
            raise ValueError("input sets must be nonempty")
        eps = default_eps(*regs) if eps is None else eps
        m = len(regs)
        H = np.zeros((m, m))
        for i, j in itertools.combinations(range(m), 2):
            H[i, j] = H[j, i] = hausdorff(regs[i], regs[j], eps).value
        d = float(H.max())
        if d <= 0:
            raise ValueError("input sets coincide; alpha(M) is undefined")
        return cls(regs, H, d)

    @property
    def m(self) -> int:
        return len(self.sets)

    def subset(self, idx) -> "MultiInput":
        idx = list(idx)
        H = self.pairwise[np.ix_(idx, idx)]
        return MultiInput(tuple(self.sets[i] for i in idx), H, float(H.max()))


@dataclass(frozen=True)
class DecisionOutcome:
    alpha: float
    feasible: bool
    t_alpha: ArcRegion
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.feasible


def t_alpha(M: MultiInput, alpha: float) -> ArcRegion:
    """Intersection of all inputs dilated by ``alpha * d``."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    r = alpha * M.d
    return intersect_regions([dilate(A, r) for A in M.sets])


def decide(M: MultiInput, alpha: float) -> DecisionOutcome:
    """Whether ``alpha`` is feasible for M, with an uncovered input point as
    witness otherwise.  Values below 1/2 are never feasible."""
    if alpha < 0.5:
        return DecisionOutcome(alpha, False, ArcRegion())
    T = t_alpha(M, alpha)
    if T.is_empty():
        return DecisionOutcome(alpha, False, T)
    U = dilate(T, alpha * M.d)
    for A in M.sets:
        c = region_contains_shape(U, A)
        if not c:
            return DecisionOutcome(alpha, False, T, c.witness)
    return DecisionOutcome(alpha, True, T)


def approx_alpha(M: MultiInput, eps_rel: float = 1e-4) -> float:
    """Binary search over [1/2, 1]; returns a feasible alpha at most
    ``eps_rel`` above alpha(M)."""
    if eps_rel <= 0:
        raise ValueError("eps_rel must be positive")
    lo, hi = 0.5, 1.0
    if decide(M, lo):
        return lo
    for _ in range(int(math.ceil(math.log2(1.0 / eps_rel)))):
        mid = 0.5 * (lo + hi)
        if decide(M, mid):
            hi = mid
        else:
            lo = mid
    return hi


# --- convex inputs -----------------------------------------------------------

@dataclass(frozen=True)
class HellyReport:
    indices: tuple
    alpha: float
    alpha_full: float
    found: bool


def helly_reduce(M: MultiInput, eps_rel: float = 1e-4) -> HellyReport:
    """Find at most three of the (convex) inputs that force the same alpha radius."""
    if not all(is_convex(A) for A in M.sets):
        raise ValueError("helly_reduce needs convex inputs")
    full = approx_alpha(M, eps_rel)
    if M.m <= 3:
        return HellyReport(tuple(range(M.m)), full, full, True)
    radius = full * M.d
    slack = 2 * eps_rel * M.d
    for size in (2, 3):
        for idx in itertools.combinations(range(M.m), size):
            sub = M.subset(idx)
            if size == 2:
                if sub.d / 2 >= radius - slack:
                    return HellyReport(idx, 0.5 * sub.d / M.d, full, True)
                continue
            # a subset never needs a larger radius than the whole collection
            probe = (radius - slack) / sub.d
            if probe < 0.5 or not decide(sub, probe):
                a = approx_alpha(sub, eps_rel)
                return HellyReport(idx, a * sub.d / M.d, full, True)
    return HellyReport((), math.nan, full, False)


# --- constants of the convex worst case ----------------------------------------

@dataclass(frozen=True)
class MagicConstants:
    z: float
    alphaStar: float
    lam: float
    theta: float


def _constraint(lam: float, th: float) -> float:
    c2 = math.cos(2 * th)
    s2 = math.sin(2 * th)
    vx = -lam * c2 / s2 - s2 + math.sin(th)
    vy = lam - c2 + math.cos(th)
    return lam + 1 - c2 - math.hypot(vx, vy)


def _lambda_for(th: float) -> float | None:
    """Smallest lambda >= 0 satisfying the equality constraint at angle th."""
    f0 = _constraint(0.0, th)
    step, lo, flo = 1e-3, 0.0, f0
    if f0 == 0:
        return 0.0
    lam = step
    while lam < 50:
        f = _constraint(lam, th)
        if (f > 0) != (flo > 0):
            a, b, fa = lo, lam, flo
            for _ in range(200):
                c = 0.5 * (a + b)
                fc = _constraint(c, th)
                if (fc > 0) == (fa > 0):
                    a, fa = c, fc
                else:
                    b = c
                if b - a < 1e-16:
                    break
            return 0.5 * (a + b)
        lo, flo = lam, f
        lam *= 1.05
    return None


def compute_magic_constants(tol: float = 1e-13, max_iter: int = 500) -> MagicConstants:
    """Minimize lambda + 1 - cos(2 theta) over the constraint curve."""

    def objective(th: float) -> float:
        lam = _lambda_for(th)
        return math.inf if lam is None else lam + 1 - math.cos(2 * th)

    grid = np.linspace(math.radians(90.5), math.radians(179.5), 901)
    vals = [objective(t) for t in grid]
    k = int(np.argmin(vals))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    g = (math.sqrt(5) - 1) / 2
    c, e = b - g * (b - a), a + g * (b - a)
    fc, fe = objective(c), objective(e)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc < fe:
            b, e, fe = e, c, fc
            c = b - g * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, e, fe
            e = a + g * (b - a)
            fe = objective(e)
    else:
        raise RuntimeError("magic constant search did not converge")
    th = 0.5 * (a + b)
    lam = _lambda_for(th)
    z = lam + 1 - math.cos(2 * th)
    return MagicConstants(z, 1.0 / z, lam, th)


def magic_segments(scale: float = 1.0, constants: MagicConstants | None = None) -> list[tuple]:
    """Endpoints of the three segments of the convex worst case: a diameter
    of a circle of radius r = alphaStar * scale and two mirrored segments
    tangent to that circle."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    K = constants or compute_magic_constants()
    r = K.alphaStar * scale
    th, lam = K.theta, K.lam
    b1 = (r * math.sin(th), r * math.cos(th))
    tx, ty = math.cos(th), -math.sin(th)
    p1 = (b1[0] + r * lam / math.sin(2 * th) * tx, b1[1] + r * lam / math.sin(2 * th) * ty)
    n1 = (b1[0] / r, b1[1] / r)
    p2 = (-p1[0], p1[1])
    # foot of p2 on the tangent line {x . n1 = r}
    s = p2[0] * n1[0] + p2[1] * n1[1] - r
    e1 = (p2[0] - s * n1[0], p2[1] - s * n1[1])
    e2 = (-e1[0], e1[1])
    return [(p1, e1), (p2, e2), ((0.0, r), (0.0, -r))]


def magic_instance(scale: float = 1.0, constants: MagicConstants | None = None) -> MultiInput:
    """The convex worst case as a MultiInput; alpha(M) = alphaStar.

    The construction is checked by measurement: a pairwise distance off
    ``scale`` by more than 1e-6 scale raises."""
    segs = magic_segments(scale, constants)
    M = MultiInput.from_sets([Shape.polyline(list(seg)) for seg in segs], eps=1e-9 * scale)
    off = float(np.abs(M.pairwise[~np.eye(3, dtype=bool)] - scale).max())
    if off > 1e-6 * scale:
        raise RuntimeError(f"magic construction is off by {off:.3g} from the target distance")
    return M


def equilateral_instance(side: float = 1.0) -> MultiInput:
    """Corners of an equilateral triangle as three one-point sets."""
    h = side * math.sqrt(3) / 2
    pts = [(0.0, 0.0), (side, 0.0), (side / 2, h)]
    return MultiInput.from_sets([Shape.point_set(p) for p in pts])


def as_multi(sets, eps: float | None = None) -> MultiInput:
    return sets if isinstance(sets, MultiInput) else MultiInput.from_sets(sets, eps)


__all__ = ["MultiInput", "DecisionOutcome", "HellyReport", "MagicConstants", "t_alpha", "decide",
           "approx_alpha", "helly_reduce", "compute_magic_constants", "magic_segments", "magic_instance",
           "equilateral_instance", "as_multi", "Geometry"]
