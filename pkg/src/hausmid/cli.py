"""Command-line front end.

Exit codes: 0 success, 2 unknown shape name or suite, 3 unreadable shape
file, 4 alpha below 1/2 for three or more sets, 5 unwritable output.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .hausdorff import default_eps, hausdorff, hausdorff_pair
from .middle import morph, normalizer, s_alpha, verify_theorem1
from .multimiddle import MultiInput, approx_alpha, t_alpha
from .region import area, as_region, component_count, is_convex
from .shapefile import ShapeFileError, load, render_svg, write_atomic

EXIT_NAME, EXIT_PARSE, EXIT_ALPHA, EXIT_OUTPUT = 2, 3, 4, 5
COLOURS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
RESULT = "#444444"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        return load(path)
    except (OSError, ShapeFileError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from exc


def _pick(shapes: dict, names) -> list:
    missing = [n for n in names if n not in shapes]
    if missing:
        raise CliError(EXIT_NAME, f"unknown shape name(s): {', '.join(missing)}; "
                                  f"available: {', '.join(shapes)}")
    return [shapes[n] for n in names]


def _write(path, text: str) -> None:
    try:
        write_atomic(path, text)
    except OSError as exc:
        raise CliError(EXIT_OUTPUT, f"cannot write {path}: {exc}") from exc


def _point(p):
    return None if p is None else [float(p[0]), float(p[1])]


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


# --- commands ------------------------------------------------------------------

def cmd_hausdorff(args) -> int:
    A, B = _pick(_load(args.file), [args.a, args.b])
    ab, ba = hausdorff_pair(A, B, args.eps)
    best = ab if ab.value >= ba.value else ba
    _emit({"directed_ab": ab.value, "directed_ba": ba.value, "undirected": best.value,
           "precision": best.precision, "witness": _point(best.witness)})
    return 0


def cmd_middle(args) -> int:
    shapes = _load(args.file)
    sets = _pick(shapes, args.names)
    if len(sets) < 2:
        raise CliError(EXIT_NAME, "middle needs at least two shape names")
    summary: dict = {"names": args.names}
    if len(sets) == 2:
        alpha = 0.5 if args.alpha is None else args.alpha
        if not 0.0 <= alpha <= 1.0:
            raise CliError(EXIT_ALPHA, "alpha must lie in [0, 1]")
        d = normalizer(sets[0], sets[1], args.eps)
        R = s_alpha(sets[0], sets[1], alpha, args.eps, d)
        summary.update(alpha=alpha, d=d)
    else:
        M = MultiInput.from_sets(sets, args.eps)
        if args.alpha is not None:
            if args.alpha < 0.5:
                raise CliError(EXIT_ALPHA, "alpha below 1/2 is never feasible for three or more sets")
            alpha, method = args.alpha, "given"
        elif args.exact:
            from .critical import exact_alpha

            res = exact_alpha(M)
            alpha, method = res.alpha, "exact"
            summary["fallback"] = res.fallback
        else:
            alpha, method = approx_alpha(M, args.approx), "approx"
        R = t_alpha(M, alpha)
        summary.update(alpha=alpha, method=method, d=M.d, radius=alpha * M.d)
    summary.update(components=component_count(R), area=area(R), empty=R.is_empty())
    if args.svg:
        layers = [(s, COLOURS[i % len(COLOURS)]) for i, s in enumerate(sets)] + [(R, RESULT)]
        svg, flags = render_svg(layers)
        _write(args.svg, svg)
        summary.update(svg=str(args.svg), render=flags)
    _emit(summary)
    return 0


def cmd_morph(args) -> int:
    A, B = _pick(_load(args.file), [args.a, args.b])
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(EXIT_OUTPUT, f"cannot create {out}: {exc}") from exc
    if not os.access(out, os.W_OK):
        raise CliError(EXIT_OUTPUT, f"output directory {out} is not writable")
    frames = morph(A, B, args.frames, args.eps)
    RA, RB = as_region(A), as_region(B)
    boxes = [R.bbox for R in (RA, RB)]
    bbox = (min(b[0] for b in boxes), min(b[1] for b in boxes), max(b[2] for b in boxes), max(b[3] for b in boxes))
    manifest = {"a": args.a, "b": args.b, "frames": []}
    for i, fr in enumerate(frames):
        name = f"frame_{i:03d}.svg"
        svg, flags = render_svg([(fr.region, RESULT)], bbox)
        _write(out / name, svg)
        manifest["frames"].append({"file": name, "alpha": fr.alpha,
                                   "components": component_count(fr.region), "render": flags})
    _write(out / "manifest.json", json.dumps(manifest, indent=2) + "\n")
    _emit(manifest)
    return 0


def _suite_theorem1(A, B, eps):
    out = []
    for a in (0.25, 0.5, 0.75):
        r = verify_theorem1(A, B, a, eps)
        out.append({"property": f"theorem1 alpha={a}", "pass": r.ok, "dAS": r.dAS, "dBS": r.dBS,
                    "expected_dAS": a * r.d, "expected_dBS": (1 - a) * r.d, "tolerance": 3 * r.eps})
    return out


def _suite_morph_rate(A, B, eps):
    d = normalizer(A, B, eps)
    alphas = (0.0, 0.25, 0.5, 0.75, 1.0)
    frames = {a: s_alpha(A, B, a, eps, d) for a in alphas}
    out = []
    for a, b in ((0.0, 0.25), (0.25, 0.75), (0.5, 1.0), (0.0, 1.0)):
        got = hausdorff(frames[a], frames[b], eps).value
        want = abs(b - a) * d
        out.append({"property": f"morph-rate {a}->{b}", "pass": abs(got - want) <= 3 * eps,
                    "measured": got, "expected": want, "tolerance": 3 * eps})
    return out


def _suite_maximality(A, B, eps):
    from .middle import maximality_holds

    d = normalizer(A, B, eps)
    RA, RB = as_region(A), as_region(B)
    x0 = min(RA.bbox[0], RB.bbox[0]) - d
    y0 = min(RA.bbox[1], RB.bbox[1]) - d
    x1 = max(RA.bbox[2], RB.bbox[2]) + d
    y1 = max(RA.bbox[3], RB.bbox[3]) + d
    rng = np.random.default_rng(0)
    pts = [tuple(p) for p in np.column_stack([rng.uniform(x0, x1, 400), rng.uniform(y0, y1, 400)])]
    out = []
    for a in (0.25, 0.5, 0.75):
        S = s_alpha(A, B, a, eps, d)
        ok = maximality_holds(A, B, a, S, d, pts)
        out.append({"property": f"maximality alpha={a}", "pass": all(ok), "samples": len(ok),
                    "disagreements": int(len(ok) - sum(ok))})
    return out


def _suite_convexity(A, B, eps):
    if not (is_convex(A) and is_convex(B)):
        return [{"property": "convexity", "pass": None, "status": "not-applicable",
                 "reason": "inputs are not both convex"}]
    d = normalizer(A, B, eps)
    out = []
    for a in (0.25, 0.5, 0.75):
        S = s_alpha(A, B, a, eps, d)
        out.append({"property": f"convexity alpha={a}", "pass": is_convex(S)})
    return out


SUITES = {"theorem1": _suite_theorem1, "morph-rate": _suite_morph_rate,
          "maximality": _suite_maximality, "convexity": _suite_convexity}


def cmd_check(args) -> int:
    shapes = _load(args.file)
    names = args.names or list(shapes)[:2]
    if len(names) != 2:
        raise CliError(EXIT_NAME, "check needs exactly two shapes")
    A, B = _pick(shapes, names)
    eps = args.eps if args.eps is not None else default_eps(as_region(A), as_region(B))
    results = SUITES[args.suite](A, B, eps)
    verdicts = [r["pass"] for r in results if r["pass"] is not None]
    _emit({"suite": args.suite, "names": names, "pass": all(verdicts) if verdicts else None, "results": results})
    return 0


# --- parser --------------------------------------------------------------------

def _positive(text: str) -> float:
    v = float(text)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def _frames(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("need at least two frames")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hausmid", description="Hausdorff distances and middles of planar sets.")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hausdorff", help="directed and undirected Hausdorff distance")
    h.add_argument("file")
    h.add_argument("a")
    h.add_argument("b")
    h.add_argument("--eps", type=_positive, default=None)
    h.set_defaults(func=cmd_hausdorff)

    m = sub.add_parser("middle", help="S_alpha of two sets or T_alpha of three or more")
    m.add_argument("file")
    m.add_argument("names", nargs="+")
    m.add_argument("--alpha", type=float, default=None)
    how = m.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true", help="search the candidate radii")
    how.add_argument("--approx", type=_positive, default=1e-4, metavar="EPS", help="binary search precision")
    m.add_argument("--svg", default=None, help="write a drawing of the inputs and the result")
    m.add_argument("--eps", type=_positive, default=None)
    m.set_defaults(func=cmd_middle)

    mo = sub.add_parser("morph", help="write k frames of S_alpha from A to B")
    mo.add_argument("file")
    mo.add_argument("a")
    mo.add_argument("b")
    mo.add_argument("--frames", type=_frames, default=5)
    mo.add_argument("--out", required=True)
    mo.add_argument("--eps", type=_positive, default=None)
    mo.set_defaults(func=cmd_morph)

    c = sub.add_parser("check", help="run a property suite on two shapes")
    c.add_argument("file")
    c.add_argument("names", nargs="*")
    c.add_argument("--suite", required=True, choices=sorted(SUITES))
    c.add_argument("--eps", type=_positive, default=None)
    c.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"hausmid: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
