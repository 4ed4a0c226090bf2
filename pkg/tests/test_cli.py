import json
import math
import os
import re
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from conftest import mismatches_outside_band
from hausmid import fixtures
from hausmid.cli import main
from hausmid.middle import s_alpha
from hausmid.oracle import rasterize
from hausmid.region import Shape, as_region
from hausmid.shapefile import ShapeFileError, _Frame, dump, dumps, load, loads, render_svg

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def corner_file(tmp_path):
    p = tmp_path / "corner.json"
    dump(fixtures.corner_pair(), p)
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if code == 0 else None), out.err


# --- shape files ---------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(fixtures.BUILDERS))
def test_fixture_files_round_trip(name):
    text = fixtures.fixture_path(name).read_text()
    assert dumps(loads(text)) == text


@pytest.mark.parametrize("name", sorted(fixtures.BUILDERS))
def test_fixture_files_match_builders(name):
    assert dumps(fixtures.load(name)) == dumps(fixtures.BUILDERS[name]())


@pytest.mark.parametrize("text", [
    "not json",
    "[1, 2]",
    '{"a": {"polygons": [[[0, 0], [1, 0]]]}}',
    '{"a": {"points": [[0, "x"]]}}',
    '{"a": {"points": [[0, 1, 2]]}}',
    '{"a": {"circles": []}}',
    '{"a": {"polylines": [[]]}}',
])
def test_malformed_shape_files(text):
    with pytest.raises(ShapeFileError):
        loads(text)


def test_written_files_are_readable(tmp_path):
    p = tmp_path / "s.json"
    dump({"p": Shape.point_set((1, 2))}, p)
    assert oct(p.stat().st_mode & 0o777) == "0o644"
    assert load(p)["p"].points == ((1.0, 2.0),)


# --- commands ------------------------------------------------------------------

def test_hausdorff_command(capsys, corner_file):
    code, out, _ = run(capsys, "hausdorff", corner_file, "A", "B1")
    assert code == 0
    assert out["directed_ab"] == pytest.approx(1.0, abs=1e-5)
    assert out["directed_ba"] == pytest.approx(0.0, abs=1e-5)
    assert out["undirected"] == pytest.approx(1.0, abs=1e-5)
    assert out["precision"] > 0 and len(out["witness"]) == 2


def test_middle_two_sets(capsys, corner_file, tmp_path):
    svg = tmp_path / "m.svg"
    code, out, _ = run(capsys, "middle", corner_file, "A", "B1", "--svg", svg)
    assert code == 0
    assert out["alpha"] == 0.5 and out["components"] == 1
    assert out["area"] == pytest.approx(1 + math.pi / 4, rel=1e-6)
    assert svg.exists()


def test_middle_three_sets_approx_and_exact(capsys, tmp_path):
    p = tmp_path / "eq.json"
    dump(fixtures.equilateral(), p)
    code, out, _ = run(capsys, "middle", p, "A1", "A2", "A3", "--approx", "1e-4")
    assert code == 0 and out["method"] == "approx"
    assert out["alpha"] == pytest.approx(1 / math.sqrt(3), abs=2e-4)
    code, out, _ = run(capsys, "middle", p, "A1", "A2", "A3", "--exact")
    assert code == 0 and out["method"] == "exact" and out["fallback"] is False
    assert out["alpha"] == pytest.approx(1 / math.sqrt(3), abs=1e-9)
    assert out["components"] == 1 and out["area"] == 0.0


def test_middle_given_alpha_below_half_is_refused(capsys, tmp_path):
    p = tmp_path / "eq.json"
    dump(fixtures.equilateral(), p)
    code, _, err = run(capsys, "middle", p, "A1", "A2", "A3", "--alpha", "0.4")
    assert code == 4 and "alpha" in err


def test_unknown_name(capsys, corner_file):
    code, _, err = run(capsys, "hausdorff", corner_file, "A", "nope")
    assert code == 2 and "nope" in err


def test_unreadable_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "hausdorff", bad, "A", "B")[0] == 3
    assert run(capsys, "hausdorff", tmp_path / "missing.json", "A", "B")[0] == 3


def test_unwritable_output(capsys, corner_file, tmp_path):
    if os.geteuid() == 0:
        target = "/proc/hausmid-cannot-write/x.svg"
    else:
        ro = tmp_path / "ro"
        ro.mkdir()
        ro.chmod(0o500)
        target = ro / "x.svg"
    code, _, _ = run(capsys, "middle", corner_file, "A", "B1", "--svg", target)
    assert code == 5
    code, _, _ = run(capsys, "morph", corner_file, "A", "B1", "--out", "/proc/hausmid-cannot-write")
    assert code == 5


def test_morph_command(capsys, tmp_path):
    p = tmp_path / "combs.json"
    dump(fixtures.comb_pair(4), p)
    out_dir = tmp_path / "frames"
    code, out, _ = run(capsys, "morph", p, "A", "B", "--frames", 5, "--out", out_dir)
    assert code == 0
    names = sorted(f.name for f in out_dir.iterdir())
    assert names == [f"frame_{i:03d}.svg" for i in range(5)] + ["manifest.json"]
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert manifest == out
    assert [f["components"] for f in manifest["frames"]] == [4, 16, 16, 16, 4]
    assert [f["alpha"] for f in manifest["frames"]] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert manifest["frames"][0]["render"]["stroked_wires"] == 4


def test_morph_needs_two_frames(corner_file):
    with pytest.raises(SystemExit):
        main(["morph", str(corner_file), "A", "B1", "--frames", "1", "--out", "x"])


@pytest.mark.parametrize("suite", ["theorem1", "morph-rate", "maximality"])
def test_check_suites_pass(capsys, corner_file, suite):
    code, out, _ = run(capsys, "check", corner_file, "A", "B2", "--suite", suite)
    assert code == 0 and out["pass"] is True
    assert all(r["pass"] for r in out["results"])


def test_check_convexity_not_applicable(capsys, tmp_path):
    p = tmp_path / "combs.json"
    dump(fixtures.comb_pair(3), p)
    code, out, _ = run(capsys, "check", p, "--suite", "convexity")
    assert code == 0 and out["pass"] is None
    assert out["results"][0]["status"] == "not-applicable"


def test_check_convexity_on_convex_pair(capsys, tmp_path):
    p = tmp_path / "tri.json"
    dump({"A": Shape.polygon([(0, 0), (1, 0), (0, 1)]), "B": Shape.polygon([(2, 0), (3, 1), (2, 2)])}, p)
    code, out, _ = run(capsys, "check", p, "A", "B", "--suite", "convexity")
    assert code == 0 and out["pass"] is True


def test_unknown_suite(corner_file):
    with pytest.raises(SystemExit) as exc:
        main(["check", str(corner_file), "--suite", "nope"])
    assert exc.value.code == 2


def test_console_entry_point(corner_file):
    r = subprocess.run([sys.executable, "-m", "hausmid.cli", "hausdorff", str(corner_file), "A", "B2"],
                       capture_output=True, text=True, check=True)
    assert json.loads(r.stdout)["undirected"] == pytest.approx(1.0, abs=1e-5)


# --- SVG -----------------------------------------------------------------------

TOKEN = re.compile(r"[MLAZ]|-?\d+(?:\.\d+)?")


def _arc_points(p0, p1, r, sweep_flag, n=64):
    """Sample a small-arc SVG 'A' segment (large-arc flag 0) in viewBox coordinates."""
    (x0, y0), (x1, y1) = p0, p1
    mx, my = (x0 + x1) / 2, (y0 + y1) / 2
    half = math.dist(p0, p1) / 2
    h = math.sqrt(max(r * r - half * half, 0.0))
    ux, uy = (x1 - x0) / (2 * half), (y1 - y0) / (2 * half)
    # in SVG's y-down frame sweep 1 is clockwise on screen: the centre lies to the right of travel
    sign = 1 if sweep_flag else -1
    cx, cy = mx - sign * h * uy, my + sign * h * ux
    a0, a1 = math.atan2(y0 - cy, x0 - cx), math.atan2(y1 - cy, x1 - cx)
    da = (a1 - a0) % (2 * math.pi) if sweep_flag else -((a0 - a1) % (2 * math.pi))
    return [(cx + r * math.cos(a0 + da * t), cy + r * math.sin(a0 + da * t)) for t in np.linspace(0, 1, n)[1:]]


def parse_path(d: str):
    toks = TOKEN.findall(d)
    loops, cur, i = [], None, 0
    while i < len(toks):
        c = toks[i]
        if c == "M":
            cur = [(float(toks[i + 1]), float(toks[i + 2]))]
            i += 3
        elif c == "L":
            cur.append((float(toks[i + 1]), float(toks[i + 2])))
            i += 3
        elif c == "A":
            r = float(toks[i + 1])
            assert toks[i + 4] == "0"
            end = (float(toks[i + 6]), float(toks[i + 7]))
            cur.extend(_arc_points(cur[-1], end, r, toks[i + 5] == "1"))
            i += 8
        elif c == "Z":
            loops.append(cur)
            cur = None
            i += 1
        else:
            raise AssertionError(f"unexpected token {c}")
    return loops


def test_svg_is_valid_and_uses_only_path_commands():
    A, B = fixtures.corner_pair()["A"], fixtures.corner_pair()["B2"]
    S = s_alpha(A, B, 0.5)
    svg, flags = render_svg([(A, "#000"), (B, "#111"), (S, "#222")])
    root = ET.fromstring(svg)
    assert root.tag == SVG_NS + "svg"
    paths = list(root)
    assert all(p.tag == SVG_NS + "path" for p in paths)
    for p in paths:
        assert set(re.findall(r"[A-Za-z]", p.get("d"))) <= set("MLAZ")
    # A, B2, and the zero-width stretch x = 1/2, 1/2 <= y <= 1 of the middle
    assert flags["stroked_wires"] == 3


def test_svg_point_faces_are_markers():
    svg, flags = render_svg([(Shape.point_set((0, 0), (1, 1)), "#000")])
    assert flags == {"point_markers": 2, "stroked_wires": 0}
    ET.fromstring(svg)


def test_svg_rerasterizes_to_the_region():
    c = fixtures.corner_pair()
    S = s_alpha(c["A"], c["B2"], 0.5)
    bbox = as_region(S).bbox
    svg, _ = render_svg([(S, "#222")], bbox)
    F = _Frame(bbox)
    d = ET.fromstring(svg)[0].get("d")
    rings = [[((x - F.ox) / F.s, (F.oy - y) / F.s) for x, y in loop] for loop in parse_path(d)]
    drawn = Shape.from_lists(polygons=[[r] for r in rings])
    h = 0.005
    # coordinates are written with 4 decimals in a 1000-unit box, far below h
    assert mismatches_outside_band(as_region(S), rasterize(drawn, h), rasterize(S, h), 2 * h) == 0
