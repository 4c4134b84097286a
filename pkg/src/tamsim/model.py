"""Core value types shared by the aTAM, GTAM and DaTAM models.

Sides are numbered N=0, E=1, S=2, W=3.  Tile types expose their exterior
sides as ``(part, side, glue, geometry)`` records where ``part`` indexes the
tile's footprint, so square tiles and duples go through the same code paths.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import networkx as nx

from .errors import (
    AsymmetricGlueError,
    AttachmentError,
    GeometrySizeError,
    InvalidGlueError,
    ModelError,
    UnstableSeedError,
)

N, E, S, W = 0, 1, 2, 3
SIDE_NAMES = "NESW"
STEP = ((0, 1), (1, 0), (0, -1), (-1, 0))

ATAM, GTAM, DATAM = "atam", "gtam", "datam"
MODELS = (ATAM, GTAM, DATAM)


def opposite(side):
    return (side + 2) % 4


def neighbor(pos, side):
    dx, dy = STEP[side]
    return (pos[0] + dx, pos[1] + dy)


class GlueLabel(NamedTuple):
    id: int
    name: str


@dataclass(frozen=True)
class GlueFunction:
    """Symmetric strength matrix over glue ids; id 0 is the null glue."""

    names: tuple
    strengths: tuple

    def __post_init__(self):
        names = tuple(self.names)
        rows = tuple(tuple(int(v) for v in row) for row in self.strengths)
        n = len(names)
        if n == 0:
            raise InvalidGlueError("glue table is empty")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidGlueError(f"strength matrix must be {n}x{n}")
        if len(set(names)) != n:
            raise InvalidGlueError("glue names must be distinct")
        for i in range(n):
            for j in range(n):
                if rows[i][j] < 0:
                    raise InvalidGlueError(f"negative strength at ({i},{j})")
                if rows[i][j] != rows[j][i]:
                    raise AsymmetricGlueError(
                        f"strength({names[i]},{names[j]})={rows[i][j]} but "
                        f"strength({names[j]},{names[i]})={rows[j][i]}",
                        pair=(i, j))
        if any(rows[0]):
            raise InvalidGlueError("row of the null glue must be all zero")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "strengths", rows)

    @classmethod
    def from_diagonal(cls, names, strengths):
        """Diagonal function: glue i binds only itself with ``strengths[i]``."""
        n = len(names)
        rows = [[0] * n for _ in range(n)]
        for i, s in enumerate(strengths):
            rows[i][i] = s
        return cls(tuple(names), tuple(tuple(r) for r in rows))

    @property
    def size(self):
        return len(self.names)

    @property
    def is_diagonal(self):
        n = self.size
        return all(self.strengths[i][j] == 0
                   for i in range(n) for j in range(n) if i != j)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidGlueError(f"unknown glue {name!r}") from None

    def label(self, i):
        return GlueLabel(i, self.names[i])

    def strength(self, a, b):
        return self.strengths[a][b]


def glue_strength(gf: GlueFunction, a, b) -> int:
    """Strength between two glues (ids or GlueLabels)."""
    a = getattr(a, "id", a)
    b = getattr(b, "id", b)
    for g in (a, b):
        if not isinstance(g, int) or not 0 <= g < gf.size:
            raise InvalidGlueError(f"glue id {g!r} out of range for {gf.size} glues")
    return gf.strengths[a][b]


@dataclass(frozen=True)
class Geometry:
    """Bump pattern on one tile side.

    Bit ``i-1`` of ``mask`` is position ``i``.  Positions are in the side's
    local order; when two sides abut, position ``i`` of one meets position
    ``L+1-i`` of the other.
    """

    length: int
    mask: int = 0
    _reverse: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.length < 1:
            raise GeometrySizeError("geometry length must be positive")
        if self.mask < 0 or self.mask >> self.length:
            raise GeometrySizeError(f"mask {self.mask:b} does not fit in {self.length} positions")
        rev = int(format(self.mask, f"0{self.length}b")[::-1], 2)
        object.__setattr__(self, "_reverse", rev)

    @classmethod
    def from_string(cls, bits):
        """``"10110"`` has bumps at positions 1, 3 and 4."""
        if not bits or set(bits) - {"0", "1"}:
            raise GeometrySizeError(f"bad geometry string {bits!r}")
        return cls(len(bits), int(bits[::-1], 2))

    @classmethod
    def from_positions(cls, length, positions):
        mask = 0
        for p in positions:
            if not 1 <= p <= length:
                raise GeometrySizeError(f"position {p} outside 1..{length}")
            mask |= 1 << (p - 1)
        return cls(length, mask)

    def __getitem__(self, i):
        if not 1 <= i <= self.length:
            raise IndexError(i)
        return (self.mask >> (i - 1)) & 1

    @property
    def positions(self):
        return tuple(i for i in range(1, self.length + 1) if self[i])

    def reversed(self):
        return Geometry(self.length, self._reverse)

    def compatible(self, other):
        return geometry_compatible(self, other)

    def __str__(self):
        return format(self.mask, f"0{self.length}b")[::-1]


def geometry_compatible(g1: Geometry, g2: Geometry) -> bool:
    """True iff no position i has a bump in g1 at i and in g2 at L+1-i."""
    if g1.length != g2.length:
        raise GeometrySizeError(f"cannot compare geometries of length {g1.length} and {g2.length}")
    return not (g1.mask & g2._reverse)


def self_incompatible(g: Geometry) -> bool:
    return not geometry_compatible(g, g)


@dataclass(frozen=True)
class SquareTile:
    name: str
    glues: tuple  # N, E, S, W

    footprint = ((0, 0),)

    def __post_init__(self):
        object.__setattr__(self, "glues", tuple(self.glues))
        if len(self.glues) != 4:
            raise ModelError(f"tile {self.name} needs 4 glues")

    def sides(self):
        return [(0, s, self.glues[s], None) for s in range(4)]


@dataclass(frozen=True)
class GeometricTile:
    name: str
    glues: tuple
    geometries: tuple

    footprint = ((0, 0),)

    def __post_init__(self):
        object.__setattr__(self, "glues", tuple(self.glues))
        object.__setattr__(self, "geometries", tuple(self.geometries))
        if len(self.glues) != 4 or len(self.geometries) != 4:
            raise ModelError(f"tile {self.name} needs 4 glues and 4 geometries")

    def sides(self):
        return [(0, s, self.glues[s], self.geometries[s]) for s in range(4)]


HORIZONTAL, VERTICAL = "horizontal", "vertical"

# Exterior unit edges of a duple, clockwise from the top-left corner.
DUPLE_EDGES = {
    HORIZONTAL: ((0, N), (1, N), (1, E), (1, S), (0, S), (0, W)),
    VERTICAL: ((1, N), (1, E), (0, E), (0, S), (0, W), (1, W)),
}
DUPLE_FOOTPRINT = {
    HORIZONTAL: ((0, 0), (1, 0)),
    VERTICAL: ((0, 0), (0, 1)),
}
# side of part 0 that faces part 1
DUPLE_CENTER = {HORIZONTAL: E, VERTICAL: N}


@dataclass(frozen=True)
class DupleTile:
    """2x1 (horizontal) or 1x2 (vertical) tile.

    Part 0 is the west (horizontal) or south (vertical) cell.  ``glues``
    follows ``DUPLE_EDGES[orientation]``.
    """

    name: str
    orientation: str
    glues: tuple

    def __post_init__(self):
        object.__setattr__(self, "glues", tuple(self.glues))
        if self.orientation not in DUPLE_EDGES:
            raise ModelError(f"bad duple orientation {self.orientation!r}")
        if len(self.glues) != 6:
            raise ModelError(f"duple {self.name} needs 6 glues")

    @property
    def footprint(self):
        return DUPLE_FOOTPRINT[self.orientation]

    def sides(self):
        return [(part, side, g, None)
                for (part, side), g in zip(DUPLE_EDGES[self.orientation], self.glues)]


class Attachment(NamedTuple):
    tile: int
    anchor: tuple
    cells: tuple

    def sort_key(self):
        return (self.anchor[1], self.anchor[0], self.tile)


class Assembly:
    """Immutable partial map from lattice cells to placed tile instances.

    An instance is identified by ``(tile, anchor)``; every cell it covers maps
    to that pair.
    """

    __slots__ = ("_cells", "_placements", "_hash")

    def __init__(self, cells=None, placements=None):
        self._cells = dict(cells or {})
        if placements is None:
            placements = frozenset(self._cells.values())
        self._placements = frozenset(placements)
        self._hash = None

    @classmethod
    def from_placements(cls, tiles, placements):
        """Build from ``(tile_index, (x, y))`` pairs; ``tiles`` is a tile list or system."""
        tiles = getattr(tiles, "tiles", tiles)
        cells = {}
        for t, (x, y) in placements:
            for dx, dy in tiles[t].footprint:
                pos = (x + dx, y + dy)
                if pos in cells:
                    raise AttachmentError(f"cell {pos} is occupied twice")
                cells[pos] = (t, (x, y))
        return cls(cells)

    @property
    def cells(self):
        return self._cells

    @property
    def placements(self):
        return self._placements

    def __len__(self):
        return len(self._placements)

    def __contains__(self, pos):
        return pos in self._cells

    def __iter__(self):
        return iter(sorted(self._placements, key=lambda p: (p[1], p[0])))

    def __eq__(self, other):
        return isinstance(other, Assembly) and self._placements == other._placements

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._placements)
        return self._hash

    def __repr__(self):
        return f"Assembly({self.canonical()})"

    def tile_at(self, pos):
        hit = self._cells.get(pos)
        return None if hit is None else hit[0]

    def attach(self, att: Attachment) -> "Assembly":
        for c in att.cells:
            if c in self._cells:
                raise AttachmentError(f"cell {c} already occupied")
        cells = dict(self._cells)
        inst = (att.tile, att.anchor)
        for c in att.cells:
            cells[c] = inst
        return Assembly(cells, self._placements | {inst})

    def issubassembly(self, other: "Assembly") -> bool:
        return self._placements <= other._placements

    def bbox(self):
        xs = [p[0] for p in self._cells]
        ys = [p[1] for p in self._cells]
        return min(xs), min(ys), max(xs), max(ys)

    def canonical(self):
        """Placements as ``(x, y, tile)`` sorted by position."""
        return tuple(sorted((a[0], a[1], t) for t, a in self._placements))

    def digest(self):
        text = json.dumps(self.canonical(), separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()

    def translated(self, dx, dy):
        return Assembly({(x + dx, y + dy): (t, (a[0] + dx, a[1] + dy))
                         for (x, y), (t, a) in self._cells.items()})


class TileSystem:
    """A seeded tile assembly system in one of the three models."""

    def __init__(self, model, glues: GlueFunction, tiles, seed, temperature,
                 geometry_length=None, validate=True):
        if model not in MODELS:
            raise ModelError(f"unknown model {model!r}")
        self.model = model
        self.glues = glues
        self.tiles = tuple(tiles)
        self.temperature = int(temperature)
        self.geometry_length = geometry_length
        if not isinstance(seed, Assembly):
            seed = Assembly.from_placements(self.tiles, seed)
        self.seed = seed
        self._index = {t.name: i for i, t in enumerate(self.tiles)}
        self._check_kinds()
        self._build_tables()
        if validate and not is_tau_stable(self.seed, self):
            raise UnstableSeedError("seed is not stable at the system temperature")

    def _check_kinds(self):
        if self.temperature < 1:
            raise ModelError("temperature must be positive")
        if len(self._index) != len(self.tiles):
            raise ModelError("tile names must be distinct")
        kinds = {ATAM: (SquareTile,), GTAM: (GeometricTile,), DATAM: (SquareTile, DupleTile)}[self.model]
        for t in self.tiles:
            if not isinstance(t, kinds):
                raise ModelError(f"tile {t.name} ({type(t).__name__}) not allowed in {self.model}")
            for g in t.glues:
                if not isinstance(g, int) or not 0 <= g < self.glues.size:
                    raise InvalidGlueError(f"tile {t.name} uses glue id {g!r}")
        if self.model in (GTAM, DATAM) and not self.glues.is_diagonal:
            raise ModelError(f"{self.model} requires a diagonal glue function")
        if self.model == GTAM:
            lengths = {g.length for t in self.tiles for g in t.geometries}
            if self.geometry_length is None and lengths:
                self.geometry_length = min(lengths)
            if lengths - {self.geometry_length}:
                raise GeometrySizeError(
                    f"geometries must all have length {self.geometry_length}, found {sorted(lengths)}")
        elif self.geometry_length is not None:
            raise ModelError("only GTAM systems carry a geometry length")

    def _build_tables(self):
        # Side labels (glue, geometry) are interned to small ints so that the
        # hot loops only do tuple lookups.
        labels = {}
        self.side_label = []
        self.exterior = []
        for t in self.tiles:
            per = {}
            ext = []
            fp = t.footprint
            for part, side, glue, geom in t.sides():
                lab = labels.setdefault((glue, geom), len(labels))
                per[(fp[part], side)] = lab
                ext.append((fp[part], side, lab))
            self.side_label.append(per)
            self.exterior.append(tuple(ext))
        self.labels = tuple(labels)
        n = len(self.labels)
        self.interaction = [[None] * n for _ in range(n)]
        for i, (ga, gma) in enumerate(self.labels):
            for j, (gb, gmb) in enumerate(self.labels):
                ok = gma is None or gmb is None or geometry_compatible(gma, gmb)
                self.interaction[i][j] = (self.glues.strengths[ga][gb], ok)
        self.footprints = tuple(t.footprint for t in self.tiles)
        self.single_cell = all(len(fp) == 1 for fp in self.footprints)
        self.square_tiles = tuple(i for i, fp in enumerate(self.footprints) if len(fp) == 1)
        self.multi_tiles = tuple(i for i, fp in enumerate(self.footprints) if len(fp) > 1)
        # neighbourhood signature -> attachable single-cell tiles, filled lazily
        self.attach_cache = {}

    def tile_index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown tile {name!r}") from None

    def attachment(self, tile, anchor):
        if isinstance(tile, str):
            tile = self.tile_index(tile)
        x, y = anchor
        cells = tuple((x + dx, y + dy) for dx, dy in self.footprints[tile])
        return Attachment(tile, (x, y), cells)

    def assembly(self, placements):
        """Assembly from ``(tile name or index, (x, y))`` pairs."""
        return Assembly.from_placements(
            self.tiles, [(self.tile_index(t) if isinstance(t, str) else t, p) for t, p in placements])

    def label_facing(self, a: Assembly, pos, side):
        """Label of the side of the tile at ``pos`` pointing in direction ``side``."""
        t, anchor = a.cells[pos]
        return self.side_label[t].get(((pos[0] - anchor[0], pos[1] - anchor[1]), side))

    def __repr__(self):
        return (f"TileSystem({self.model}, {len(self.tiles)} tiles, "
                f"{self.glues.size} glues, tau={self.temperature})")


def bonds(a: Assembly, sys: TileSystem):
    """Yield ``(inst_u, inst_v, strength, compatible, pos_u, side)`` per abutting side pair."""
    cells = a.cells
    for pos, inst in cells.items():
        for side in (E, N):
            q = neighbor(pos, side)
            other = cells.get(q)
            if other is None or other == inst:
                continue
            la = sys.label_facing(a, pos, side)
            lb = sys.label_facing(a, q, opposite(side))
            strength, ok = sys.interaction[la][lb]
            yield inst, other, strength, ok, pos, side


def binding_graph(a: Assembly, sys: TileSystem) -> nx.Graph:
    """Weighted graph over instances; only positive, geometry-compatible pairs bond."""
    g = nx.Graph()
    g.add_nodes_from(a.placements)
    for u, v, strength, ok, _, _ in bonds(a, sys):
        if strength > 0 and ok:
            w = g.edges[u, v]["weight"] if g.has_edge(u, v) else 0
            g.add_edge(u, v, weight=w + strength)
    return g


def is_tau_stable(a: Assembly, sys: TileSystem) -> bool:
    if len(a) <= 1:
        return True
    g = binding_graph(a, sys)
    if not nx.is_connected(g):
        return False
    cut, _ = nx.stoer_wagner(g)
    return cut >= sys.temperature
