"""Block representations: m-block supertiles mapped onto simulated tiles."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import AttachmentError, ImageConflictError
from .model import Assembly, TileSystem


@dataclass
class BlockRepresentation:
    """Partial map from m x m block patterns of a simulator to tiles of ``target``.

    A pattern is a tuple of ``scale * scale`` entries in row-major order
    (bottom row first); each entry is ``None`` or ``(tile, part)``.  An image
    is a target tile index, or ``(duple tile, part)`` for one cell of a duple.
    ``offset`` is the width of the geometry strip between neighbouring blocks.

    ``lone_half`` says what a block showing only part of a multi-cell tile
    maps to: ``"footprint"`` places the whole tile, ``"empty"`` drops it
    until every part is represented.
    """

    scale: int
    table: dict
    target: TileSystem
    offset: int = 0
    lone_half: str = "footprint"
    _pitch: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.scale < 1 or self.offset < 0:
            raise ValueError("scale must be >= 1 and offset >= 0")
        if self.lone_half not in ("footprint", "empty"):
            raise ValueError(f"lone_half must be 'footprint' or 'empty', not {self.lone_half!r}")
        self._pitch = self.scale + self.offset

    def block_origin(self, bx, by):
        p = self._pitch
        return (p * bx, p * by)

    def locate(self, pos):
        """``(block, (ix, iy))`` for a cell, or ``(block, None)`` in a geometry strip."""
        p, m = self._pitch, self.scale
        bx, ix = divmod(pos[0], p)
        by, iy = divmod(pos[1], p)
        if ix >= m or iy >= m:
            return (bx, by), None
        return (bx, by), (ix, iy)

    def image_of(self, pattern):
        return self.table.get(pattern)

    def is_valid(self):
        return not validity_violations(self)


def _entry(a, pos):
    hit = a.cells.get(pos)
    if hit is None:
        return None
    t, anchor = hit
    return (t, (pos[0] - anchor[0], pos[1] - anchor[1]))


def _pattern(a, rep, bx, by):
    ox, oy = rep.block_origin(bx, by)
    m = rep.scale
    out = []
    for iy in range(m):
        for ix in range(m):
            e = _entry(a, (ox + ix, oy + iy))
            out.append(None if e is None else (e[0], _part(a, e)))
    return tuple(out)


def _part(a, entry):
    # footprint index is only meaningful for multi-cell tiles; square tiles use 0
    t, off = entry
    return 0 if off == (0, 0) else 1


def block_at(a: Assembly, rep: BlockRepresentation, x, y):
    """The m x m pattern of block (x, y), honouring the geometry-strip offset."""
    return _pattern(a, rep, x, y)


def nonempty_blocks(a: Assembly, rep: BlockRepresentation):
    """Blocks with at least one tile, plus the cells lying in geometry strips."""
    blocks, strips = set(), set()
    for pos in a.cells:
        b, inner = rep.locate(pos)
        (blocks if inner is not None else strips).add(b if inner is not None else pos)
    return blocks, strips


def rep_star(rep: BlockRepresentation, a: Assembly) -> Assembly:
    """Assembly-level image; blocks outside the table's domain map to empty."""
    blocks, _ = nonempty_blocks(a, rep)
    target = rep.target
    instances = set()
    parts = defaultdict(set)
    for b in blocks:
        img = rep.table.get(_pattern(a, rep, *b))
        if img is None:
            continue
        if isinstance(img, tuple):
            t, part = img
            dx, dy = target.footprints[t][part]
            inst = (t, (b[0] - dx, b[1] - dy))
            instances.add(inst)
            parts[inst].add(part)
        else:
            instances.add((img, b))
    if rep.lone_half == "empty":
        instances -= {i for i, seen in parts.items() if len(seen) < len(target.footprints[i[0]])}
    try:
        return Assembly.from_placements(target.tiles, instances)
    except AttachmentError as exc:
        raise ImageConflictError(f"representation overlaps: {exc.args[0]}",
                                 instances=sorted(instances, key=lambda i: (i[1], i[0]))) from None


def _allowed_blocks(image: Assembly):
    dom = set(image.cells)
    allowed = set(dom)
    for (x, y) in dom:
        allowed.update(((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)))
    return allowed


def _strip_touches(rep, pos):
    (bx, by), _ = rep.locate(pos)
    p, m = rep._pitch, rep.scale
    xs = [bx, bx + 1] if pos[0] - p * bx >= m else [bx]
    ys = [by, by + 1] if pos[1] - p * by >= m else [by]
    return [(x, y) for x in xs for y in ys]


def fuzz_violations(a: Assembly, rep: BlockRepresentation, image=None):
    """Non-empty blocks (and strip cells) that are neither represented nor next to a represented block."""
    if image is None:
        image = rep_star(rep, a)
    blocks, strips = nonempty_blocks(a, rep)
    if len(blocks) + len(strips) <= 1:
        return []
    allowed = _allowed_blocks(image)
    bad = sorted(b for b in blocks if b not in allowed)
    bad += sorted(c for c in strips if not any(t in allowed for t in _strip_touches(rep, c)))
    return bad


def maps_cleanly(a: Assembly, rep: BlockRepresentation) -> bool:
    try:
        return not fuzz_violations(a, rep)
    except ImageConflictError:
        return False


def _subsumes(p, q):
    """True when pattern p is contained in pattern q."""
    return all(x is None or x == y for x, y in zip(p, q))


def validity_violations(rep: BlockRepresentation):
    """Pairs of comparable patterns in the domain that map to different images."""
    keys = list(rep.table)
    bad = []
    for i, p in enumerate(keys):
        for q in keys[i + 1:]:
            if rep.table[p] != rep.table[q] and (_subsumes(p, q) or _subsumes(q, p)):
                bad.append((p, q))
    return bad


def scale_one(table, target, lone_half="footprint"):
    """Scale-1 representation from a per-tile image map ``{tile: image}``."""
    return BlockRepresentation(1, {((t, 0),): img for t, img in table.items()}, target,
                               lone_half=lone_half)
