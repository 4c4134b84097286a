"""ASCII and SVG drawings of assemblies."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .model import Assembly, TileSystem

CELL, GAP, BUMP = 40, 8, 3


def render_ascii(sys: TileSystem, a: Assembly, width=None):
    """One text row per lattice row, top row first; empty cells are dots."""
    if not a.cells:
        return "(empty)\n"
    x0, y0, x1, y1 = a.bbox()
    names = {pos: sys.tiles[t].name for pos, (t, _) in a.cells.items()}
    w = width or min(max(len(n) for n in names.values()), 10)
    lines = []
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            row.append(names.get((x, y), ".")[:w].ljust(w))
        lines.append(" ".join(row).rstrip())
    return "\n".join(lines) + "\n"


def _side_slots(side, length, x, y, size):
    """Rectangles for each bump slot, numbered clockwise around the tile."""
    step = size / length
    for i in range(length):
        if side == 0:
            yield x + i * step, y - BUMP, step, BUMP
        elif side == 1:
            yield x + size, y + i * step, BUMP, step
        elif side == 2:
            yield x + size - (i + 1) * step, y + size, step, BUMP
        else:
            yield x - BUMP, y + size - (i + 1) * step, BUMP, step


def _num(v):
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render_svg(sys: TileSystem, a: Assembly):
    """SVG 1.1 drawing: one ``rect.tile`` per tile instance, bumps as ``rect.bump``."""
    pitch = CELL + GAP
    if a.cells:
        x0, y0, x1, y1 = a.bbox()
    else:
        x0 = y0 = x1 = y1 = 0
    width, height = (x1 - x0 + 1) * pitch + GAP, (y1 - y0 + 1) * pitch + GAP
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<style>.tile{fill:#dde7f0;stroke:#345;stroke-width:1}.bump{fill:#345}'
        'text{font:10px monospace;text-anchor:middle}</style>',
    ]

    def corner(x, y):
        return GAP + (x - x0) * pitch, GAP + (y1 - y) * pitch

    for t, anchor in sorted(a.placements, key=lambda p: (p[1][1], p[1][0], p[0])):
        tile = sys.tiles[t]
        cells = [(anchor[0] + dx, anchor[1] + dy) for dx, dy in tile.footprint]
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        left, top = corner(min(xs), max(ys))
        w = (max(xs) - min(xs)) * pitch + CELL
        h = (max(ys) - min(ys)) * pitch + CELL
        name = escape(tile.name)
        out.append(f'<rect class="tile" x="{left}" y="{top}" width="{w}" height="{h}">'
                   f'<title>{name}</title></rect>')
        out.append(f'<text x="{_num(left + w / 2)}" y="{_num(top + h / 2 + 3)}">{name[:8]}</text>')
        for part, side, _, geom in tile.sides():
            if geom is None:
                continue
            cx, cy = corner(*cells[part])
            for i, (bx, by, bw, bh) in enumerate(_side_slots(side, geom.length, cx, cy, CELL), 1):
                if geom[i]:
                    out.append(f'<rect class="bump" x="{_num(bx)}" y="{_num(by)}" '
                               f'width="{_num(bw)}" height="{_num(bh)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
