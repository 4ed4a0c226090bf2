"""Two-set Hausdorff middles and morphs.

``S_alpha(A, B) = (A + D(alpha d)) & (B + D((1 - alpha) d))`` with
``d = d_H(A, B)``.  Inputs are never rescaled; radii are multiples of the
measured ``d``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .boolean import intersect_regions, symmetric_difference_area
from .hausdorff import default_eps, hausdorff
from .region import ArcRegion, Geometry, area, as_region, dilate


@dataclass(frozen=True)
class MorphFrame:
    alpha: float
    region: ArcRegion


@dataclass(frozen=True)
class Theorem1Report:
    alpha: float
    d: float
    dAS: float
    dBS: float
    eps: float

    @property
    def ok(self) -> bool:
        return (abs(self.dAS - self.alpha * self.d) <= 3 * self.eps
                and abs(self.dBS - (1 - self.alpha) * self.d) <= 3 * self.eps)


@dataclass(frozen=True)
class SubmorphReport:
    alpha: float
    beta: float
    direct_area: float
    composed_area: float
    symmetric_difference: float
    bound: float

    @property
    def ok(self) -> bool:
        return self.symmetric_difference <= self.bound


def _check_inputs(A: ArcRegion, B: ArcRegion) -> None:
    if A.is_empty() or B.is_empty():
        raise ValueError("middle of an empty set is undefined")


def normalizer(A: Geometry, B: Geometry, eps: float | None = None) -> float:
    """The Hausdorff distance d used to scale dilation radii."""
    return hausdorff(A, B, eps).value


def s_alpha(A: Geometry, B: Geometry, alpha: float, eps: float | None = None,
            d: float | None = None) -> ArcRegion:
    """The middle S_alpha; ``d`` may be passed to reuse a measured normalizer."""
    RA, RB = as_region(A), as_region(B)
    _check_inputs(RA, RB)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if d is None:
        d = normalizer(RA, RB, eps)
    if alpha == 0.0 or d == 0.0:
        return RA
    if alpha == 1.0:
        return RB
    return intersect_regions([dilate(RA, alpha * d), dilate(RB, (1.0 - alpha) * d)])


def verify_theorem1(A: Geometry, B: Geometry, alpha: float, eps: float | None = None) -> Theorem1Report:
    """Measure d_H(A, S_alpha) and d_H(B, S_alpha)."""
    RA, RB = as_region(A), as_region(B)
    _check_inputs(RA, RB)
    eps = default_eps(RA, RB) if eps is None else eps
    d = normalizer(RA, RB, eps)
    S = s_alpha(RA, RB, alpha, eps, d)
    return Theorem1Report(alpha, d, hausdorff(RA, S, eps).value, hausdorff(RB, S, eps).value, eps)


def morph(A: Geometry, B: Geometry, k: int, eps: float | None = None) -> list[MorphFrame]:
    """``k`` frames at alpha = i / (k - 1), all sharing one normalizer."""
    if k < 2:
        raise ValueError("a morph needs at least two frames")
    RA, RB = as_region(A), as_region(B)
    _check_inputs(RA, RB)
    d = normalizer(RA, RB, eps)
    frames = []
    for i in range(k):
        a = i / (k - 1)
        frames.append(MorphFrame(a, s_alpha(RA, RB, a, eps, d)))
    return frames


def submorph_decompose(A: Geometry, B: Geometry, alpha: float, beta: float,
                       eps: float | None = None) -> SubmorphReport:
    """Compare S_beta(A, B) against the middle of (S_alpha, B) at the matching
    position, built from the adjusted radii (beta - alpha) d and (1 - beta) d."""
    if not 0.0 <= alpha < beta <= 1.0:
        raise ValueError("need 0 <= alpha < beta <= 1")
    RA, RB = as_region(A), as_region(B)
    _check_inputs(RA, RB)
    d = normalizer(RA, RB, eps)
    direct = s_alpha(RA, RB, beta, eps, d)
    Sa = s_alpha(RA, RB, alpha, eps, d)
    if beta == 1.0:
        composed = RB
    else:
        composed = intersect_regions([dilate(Sa, (beta - alpha) * d), dilate(RB, (1.0 - beta) * d)])
    sym = abs(symmetric_difference_area(direct, composed))
    perimeter = sum(e.length() for e in direct.loop_edges) + sum(e.length() for e in composed.loop_edges)
    tau = max(direct.tol, composed.tol, RA.tol)
    return SubmorphReport(alpha, beta, area(direct), area(composed), sym, 10 * tau * max(perimeter, 1.0))


def maximality_holds(A: Geometry, B: Geometry, alpha: float, S: ArcRegion, d: float, pts) -> list[bool]:
    """For each sample point: membership in S agrees with the two distance tests."""
    RA, RB = as_region(A), as_region(B)
    tau = max(RA.tol, RB.tol, S.tol)
    band = 100 * tau
    out = []
    for p in pts:
        da, db = RA.distance(p), RB.distance(p)
        slack = min(abs(da - alpha * d), abs(db - (1 - alpha) * d))
        if slack <= band:
            out.append(True)  # too close to the boundary of S to judge
            continue
        expect = da <= alpha * d and db <= (1 - alpha) * d
        out.append(S.contains_point(p, tau) == expect)
    return out


__all__ = ["MorphFrame", "Theorem1Report", "SubmorphReport", "normalizer", "s_alpha", "verify_theorem1",
           "morph", "submorph_decompose", "maximality_holds"]
