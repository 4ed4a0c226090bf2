"""Shape files (JSON) and SVG output.

A shape file maps names to ``{"polygons": [[outer, hole, ...], ...],
"polylines": [[p, ...], ...], "points": [p, ...]}`` with points as
``[x, y]`` pairs.  Missing keys mean empty lists.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path

from .geometry import Segment
from .region import Shape, as_region

KEYS = ("polygons", "polylines", "points")


class ShapeFileError(ValueError):
    pass


def _point(p, where: str) -> tuple[float, float]:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise ShapeFileError(f"{where}: expected [x, y], got {p!r}")
    try:
        x, y = float(p[0]), float(p[1])
    except (TypeError, ValueError) as exc:
        raise ShapeFileError(f"{where}: non-numeric coordinate in {p!r}") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ShapeFileError(f"{where}: non-finite coordinate in {p!r}")
    return (x, y)


def _shape(name: str, obj) -> Shape:
    if not isinstance(obj, dict):
        raise ShapeFileError(f"{name}: expected an object")
    extra = set(obj) - set(KEYS)
    if extra:
        raise ShapeFileError(f"{name}: unknown keys {sorted(extra)}")
    polys = []
    for k, poly in enumerate(obj.get("polygons", [])):
        if not poly:
            raise ShapeFileError(f"{name}.polygons[{k}]: empty polygon")
        rings = []
        for r, ring in enumerate(poly):
            pts = [_point(p, f"{name}.polygons[{k}][{r}]") for p in ring]
            if len(pts) < 3:
                raise ShapeFileError(f"{name}.polygons[{k}][{r}]: a ring needs three points")
            rings.append(pts)
        polys.append(rings)
    lines = []
    for k, line in enumerate(obj.get("polylines", [])):
        pts = [_point(p, f"{name}.polylines[{k}]") for p in line]
        if not pts:
            raise ShapeFileError(f"{name}.polylines[{k}]: empty polyline")
        lines.append(pts)
    pts = [_point(p, f"{name}.points") for p in obj.get("points", [])]
    return Shape.from_lists(polys, lines, pts)


def loads(text: str) -> dict[str, Shape]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ShapeFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ShapeFileError("top level must map names to shapes")
    return {str(k): _shape(str(k), v) for k, v in data.items()}


def load(path) -> dict[str, Shape]:
    return loads(Path(path).read_text())


def shape_to_obj(s: Shape) -> dict:
    obj: dict = {}
    if s.polygons:
        obj["polygons"] = [[[list(p) for p in ring] for ring in poly] for poly in s.polygons]
    if s.polylines:
        obj["polylines"] = [[list(p) for p in line] for line in s.polylines]
    if s.points:
        obj["points"] = [list(p) for p in s.points]
    return obj


def dumps(shapes: dict[str, Shape]) -> str:
    rows = [f" {json.dumps(k)}: {json.dumps(shape_to_obj(v))}" for k, v in shapes.items()]
    return "{\n" + ",\n".join(rows) + "\n}\n"


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump(shapes: dict[str, Shape], path) -> None:
    write_atomic(path, dumps(shapes))


# --- SVG -----------------------------------------------------------------------

VIEW = 1000.0
MARGIN = 0.05
POINT_RADIUS = 3.0


class _Frame:
    """Maps plane coordinates into the SVG viewBox (y axis flipped)."""

    def __init__(self, bbox: tuple[float, float, float, float]):
        x0, y0, x1, y1 = bbox
        span = max(x1 - x0, y1 - y0)
        if span <= 0:
            span = 1.0
        self.s = VIEW * (1 - 2 * MARGIN) / span
        self.ox = VIEW / 2 - self.s * 0.5 * (x0 + x1)
        self.oy = VIEW / 2 + self.s * 0.5 * (y0 + y1)

    def __call__(self, p) -> tuple[float, float]:
        return (self.ox + self.s * p[0], self.oy - self.s * p[1])


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


def _edge_cmds(e, F: _Frame) -> list[str]:
    if isinstance(e, Segment):
        x, y = F(e.end)
        return [f"L {_fmt(x)} {_fmt(y)}"]
    # split so no piece reaches a half turn; the y flip reverses the sweep flag
    n = max(1, int(math.ceil(abs(e.sweep) / (0.75 * math.pi))))
    rr = _fmt(e.radius * F.s)
    out = []
    for k in range(n):
        x, y = F(e.sub(k / n, (k + 1) / n).end if k < n - 1 else e.end)
        sweep_flag = 0 if e.sweep > 0 else 1
        out.append(f"A {rr} {rr} 0 0 {sweep_flag} {_fmt(x)} {_fmt(y)}")
    return out


def _loop_path(loop, F: _Frame) -> str:
    x, y = F(loop[0].start)
    cmds = [f"M {_fmt(x)} {_fmt(y)}"]
    for e in loop:
        cmds += _edge_cmds(e, F)
    return " ".join(cmds) + " Z"


def _wire_path(edges, F: _Frame) -> str:
    cmds = []
    last = None
    for e in edges:
        if last is None or math.dist(last, e.start) > 1e-12:
            x, y = F(e.start)
            cmds.append(f"M {_fmt(x)} {_fmt(y)}")
        cmds += _edge_cmds(e, F)
        last = e.end
    return " ".join(cmds)


def _circle_path(c: tuple[float, float], r: float) -> str:
    x, y = c
    return (f"M {_fmt(x - r)} {_fmt(y)} A {_fmt(r)} {_fmt(r)} 0 0 1 {_fmt(x + r)} {_fmt(y)} "
            f"A {_fmt(r)} {_fmt(r)} 0 0 1 {_fmt(x - r)} {_fmt(y)} Z")


def render_svg(layers, bbox=None) -> tuple[str, dict]:
    """SVG text for ``[(region, fill colour), ...]`` plus a summary of the
    degenerate faces drawn as markers or strokes."""
    regions = [(as_region(g), colour) for g, colour in layers]
    boxes = [R.bbox for R, _ in regions if not R.is_empty()]
    if bbox is None:
        bbox = (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes)) if boxes else (0.0, 0.0, 1.0, 1.0)
    F = _Frame(bbox)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {int(VIEW)} {int(VIEW)}">']
    flags = {"point_markers": 0, "stroked_wires": 0}
    for R, colour in regions:
        for f in R.faces:
            if f.kind == "area":
                d = " ".join(_loop_path(loop, F) for loop in f.loops())
                parts.append(f'<path d="{d}" fill="{colour}" fill-opacity="0.5" fill-rule="evenodd" '
                             f'stroke="{colour}" stroke-width="1"/>')
            elif f.kind == "wire":
                flags["stroked_wires"] += 1
                parts.append(f'<path d="{_wire_path(f.wire, F)}" fill="none" stroke="{colour}" stroke-width="2"/>')
            else:
                flags["point_markers"] += 1
                parts.append(f'<path d="{_circle_path(F(f.point), POINT_RADIUS)}" fill="{colour}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n", flags


__all__ = ["ShapeFileError", "loads", "load", "dumps", "dump", "shape_to_obj", "write_atomic", "render_svg"]
