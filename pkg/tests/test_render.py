import xml.etree.ElementTree as ET

from tamsim.atam_compiler import compile_atam_system
from tamsim.dynamics import SequencePolicy, run
from tamsim.gallery import duple_blocking_demo, mismatch_square_system
from tamsim.model import Assembly
from tamsim.render import render_ascii, render_svg

SVG = "{http://www.w3.org/2000/svg}"


def _square():
    T = mismatch_square_system()
    return T, T.assembly([("S", (0, 0)), ("U", (0, 1)), ("R", (1, 0)), ("A", (1, 1))])


def test_square_svg_has_four_tiles():
    T, a = _square()
    root = ET.fromstring(render_svg(T, a).encode())
    tiles = [r for r in root.iter(SVG + "rect") if r.get("class") == "tile"]
    assert len(tiles) == 4
    assert not [r for r in root.iter(SVG + "rect") if r.get("class") == "bump"]


def test_svg_is_deterministic():
    T, a = _square()
    assert render_svg(T, a) == render_svg(T, Assembly(dict(reversed(list(a.cells.items())))))


def test_compiled_tiles_show_bumps():
    T, _ = _square()
    U, _ = compile_atam_system(T)
    a = run(U, SequencePolicy(), 4).final
    root = ET.fromstring(render_svg(U, a).encode())
    bumps = [r for r in root.iter(SVG + "rect") if r.get("class") == "bump"]
    expected = sum(g[i] for t, _ in a.placements for g in U.tiles[t].geometries
                   for i in range(1, g.length + 1))
    assert len(bumps) == expected > 0


def test_duple_is_one_rectangle():
    D = duple_blocking_demo()
    a = D.seed.attach(D.attachment("duple", (1, 0)))
    root = ET.fromstring(render_svg(D, a).encode())
    tiles = [r for r in root.iter(SVG + "rect") if r.get("class") == "tile"]
    assert len(tiles) == len(a.placements) == len(a.cells) - 1


def test_ascii_grid():
    T, a = _square()
    assert render_ascii(T, a) == "U A\nS R\n"
    assert render_ascii(T, Assembly()) == "(empty)\n"
    corner = T.assembly([("S", (0, 0)), ("R", (1, 0)), ("A", (1, 1))])
    assert render_ascii(T, corner) == ". A\nS R\n"
