"""Reference instances, built in code and shipped as shape files."""
from __future__ import annotations

import math
from importlib import resources
from pathlib import Path

from .region import Shape


def comb_pair(teeth_a: int = 4, teeth_b: int | None = None, spacing: float = 1.0) -> dict[str, Shape]:
    """Two combs: ``teeth_a`` vertical teeth and ``teeth_b`` horizontal ones,
    crossing in a grid.  Their Hausdorff distance is ``spacing / 2`` and the
    middle at alpha 1/2 has one component per crossing."""
    teeth_b = teeth_a if teeth_b is None else teeth_b
    if teeth_a < 2 or teeth_b < 2:
        raise ValueError("a comb needs at least two teeth")
    h = (teeth_b - 1) * spacing
    w = (teeth_a - 1) * spacing
    A = Shape.polyline(*[[(i * spacing, 0.0), (i * spacing, h)] for i in range(teeth_a)])
    B = Shape.polyline(*[[(0.0, j * spacing), (w, j * spacing)] for j in range(teeth_b)])
    return {"A": A, "B": B}


def corner_pair() -> dict[str, Shape]:
    """Left and bottom sides of the unit square against its left or right side."""
    return {
        "A": Shape.polyline([(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)]),
        "B1": Shape.polyline([(0.0, 0.0), (0.0, 1.0)]),
        "B2": Shape.polyline([(1.0, 0.0), (1.0, 1.0)]),
    }


def full_alpha_triple() -> dict[str, Shape]:
    """Three sets on the x axis with pairwise distance 1 whose alpha is 1:
    the origin belongs to A1 only, and A2 and A3 stay at distance 1 from it
    on opposite sides, so T_alpha misses the unit disk around it until alpha 1."""
    return {
        "A1": Shape.from_lists(polylines=[[(-4.0, 0.0), (-2.0, 0.0)], [(2.0, 0.0), (4.0, 0.0)]],
                               points=[(0.0, 0.0)]),
        "A2": Shape.polyline([(-4.0, 0.0), (-2.0, 0.0)], [(1.0, 0.0), (4.0, 0.0)]),
        "A3": Shape.polyline([(-4.0, 0.0), (-1.0, 0.0)], [(2.0, 0.0), (4.0, 0.0)]),
    }


def disk_and_circles(eps: float = 0.2, circles: int = 3, sides: int = 120) -> dict[str, Shape]:
    """A filled disk of radius 1 + eps and ``circles`` copies of its boundary
    circle.  Inward spikes of length eps sit at ``circles`` evenly spaced
    angles; copy k has a spike at every one of them except angle k.

    With all sets present alpha d = (1 + eps)/2; dropping one copy lets the
    spikes at its missing angle grow T_alpha, and alpha d falls to (2 + eps)/4.
    Circles are regular ``sides``-gons (``sides`` a multiple of ``circles``)."""
    if sides % circles:
        raise ValueError("sides must be a multiple of the circle count")
    R = 1.0 + eps
    ang = [math.pi / 2 + 2 * math.pi * k / sides for k in range(sides)]
    ring = [(R * math.cos(a), R * math.sin(a)) for a in ang]
    out = {"disk": Shape.polygon(ring)}
    spikes = []
    for k in range(circles):
        a = ang[k * sides // circles]
        spikes.append([(R * math.cos(a), R * math.sin(a)), (math.cos(a), math.sin(a))])
    for k in range(circles):
        lines = [ring + [ring[0]]] + [s for j, s in enumerate(spikes) if j != k]
        out[f"circle{k + 1}"] = Shape.polyline(*lines)
    return out


def equilateral(side: float = 1.0) -> dict[str, Shape]:
    h = side * math.sqrt(3) / 2
    return {"A1": Shape.point_set((0.0, 0.0)), "A2": Shape.point_set((side, 0.0)),
            "A3": Shape.point_set((side / 2, h))}


def magic(scale: float = 1.0) -> dict[str, Shape]:
    from .multimiddle import magic_segments

    return {f"A{i + 1}": Shape.polyline(list(seg)) for i, seg in enumerate(magic_segments(scale))}


BUILDERS = {
    "combs": lambda: comb_pair(4),
    "corner": corner_pair,
    "full_alpha": full_alpha_triple,
    "disk_circles": disk_and_circles,
    "equilateral": equilateral,
    "magic": magic,
}


def fixture_path(name: str):
    return resources.files("hausmid") / "fixtures" / f"{name}.json"


def load(name: str) -> dict[str, Shape]:
    """Read a shipped fixture file."""
    from .shapefile import loads

    if name not in BUILDERS:
        raise KeyError(name)
    return loads(fixture_path(name).read_text())


def write_all(directory) -> None:
    """Regenerate the shipped fixture files."""
    from .shapefile import dump

    for name, build in BUILDERS.items():
        dump(build(), Path(directory) / f"{name}.json")


if __name__ == "__main__":
    write_all(Path(__file__).parent / "fixtures")


__all__ = ["comb_pair", "corner_pair", "full_alpha_triple", "disk_and_circles", "equilateral", "magic",
           "BUILDERS", "fixture_path", "load"]
