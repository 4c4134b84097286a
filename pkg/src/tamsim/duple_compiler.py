"""Temperature-1 DaTAM -> temperature-1 GTAM with two glues, at scale 1.

Every geometry has length 4k+2 with k = max(#glues, #duple types), laid out
``[normal flag | a1 | b1 | b2 | a2 | duple flag]``.  Ordinary glue sides
carry the normal flag and duple centres carry the duple flag; the two flags
meet under reversal, so a duple centre only ever binds the matching half of
the same duple type.  A duple becomes two square half tiles whose centre
sides carry ``(g_alpha, lambda_d)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .atam_compiler import (ALPHA, BETA, COMPILED_GLUES, G_ALPHA, G_BETA, VariantMap,
                            fix_seed_versions, version_code)
from .dynamics import frontier
from .errors import UnsupportedInputError
from .model import (DATAM, DUPLE_CENTER, DUPLE_EDGES, GTAM, Assembly, DupleTile,
                    GeometricTile, Geometry, TileSystem, opposite)


def datam_offsets(k):
    """Absolute (1-based) positions of the flags and of domain slot ``i``."""
    L = 4 * k + 2
    return {
        "normal": lambda: 1,
        "a1": lambda i: 1 + i,
        "b1": lambda i: k + 1 + i,
        "b2": lambda j: 3 * k + 2 - j,
        "a2": lambda j: 4 * k + 2 - j,
        "duple": lambda: L,
    }


@dataclass(frozen=True)
class DatamGeometryTable:
    """``alpha``/``beta`` per glue id (0 is null); ``centers`` per duple, 1-based."""

    k: int
    alpha: tuple
    beta: tuple
    centers: tuple

    @property
    def length(self):
        return 4 * self.k + 2

    def geometry(self, glue, version):
        return (self.alpha, self.beta)[version][glue]

    def center(self, duple_number):
        return self.centers[duple_number - 1]


def _duple_types(sys):
    return [i for i, t in enumerate(sys.tiles) if isinstance(t, DupleTile)]


def build_datam_geometries(sys: TileSystem) -> DatamGeometryTable:
    if not sys.glues.is_diagonal:
        raise UnsupportedInputError("duple compilation needs a diagonal glue function")
    n = sys.glues.size - 1
    duples = _duple_types(sys)
    k = max(n, len(duples), 1)
    at = datam_offsets(k)
    L = 4 * k + 2
    flag = [at["normal"]()]
    null = Geometry.from_positions(L, flag)
    alpha, beta = [null], [null]
    for i in range(1, n + 1):
        rest = [j for j in range(1, k + 1) if j != i]
        alpha.append(Geometry.from_positions(L, flag + [at["a1"](i)] + [at["a2"](j) for j in rest]))
        beta.append(Geometry.from_positions(L, flag + [at["b1"](i)] + [at["b2"](j) for j in rest]))
    centers = []
    for i in range(1, len(duples) + 1):
        rest = [j for j in range(1, k + 1) if j != i]
        centers.append(Geometry.from_positions(
            L, [at["duple"](), at["a1"](i)] + [at["a2"](j) for j in rest]))
    return DatamGeometryTable(k, tuple(alpha), tuple(beta), tuple(centers))


def _variant_glue(glue, version):
    return 0 if glue == 0 else (G_ALPHA, G_BETA)[version]


def half_sides(duple: DupleTile, part):
    """``{side: glue}`` for the three exterior sides of one half."""
    return {side: g for (p, side), g in zip(DUPLE_EDGES[duple.orientation], duple.glues) if p == part}


def center_side(duple: DupleTile, part):
    c = DUPLE_CENTER[duple.orientation]
    return c if part == 0 else opposite(c)


def compile_half_variants(duple: DupleTile, part, number, table: DatamGeometryTable):
    """The 8 variants of one duple half, as ``(tile, versions)`` with the centre at alpha."""
    ext = half_sides(duple, part)
    c = center_side(duple, part)
    order = sorted(ext)
    out = []
    for choice in product((ALPHA, BETA), repeat=3):
        versions = [ALPHA] * 4
        for side, v in zip(order, choice):
            versions[side] = v
        glues, geoms = [0] * 4, [None] * 4
        for side in order:
            glues[side] = _variant_glue(ext[side], versions[side])
            geoms[side] = table.geometry(ext[side], versions[side])
        glues[c], geoms[c] = G_ALPHA, table.center(number)
        code = "".join("c" if s == c else "ab"[versions[s]] for s in range(4))
        name = f"{duple.name}_{'ab'[part].upper()}_{code}"
        out.append((GeometricTile(name, glues, geoms), tuple(versions)))
    return out


def compile_square_variants(t, table: DatamGeometryTable):
    out = []
    for versions in product((ALPHA, BETA), repeat=4):
        glues = tuple(_variant_glue(t.glues[s], versions[s]) for s in range(4))
        geoms = tuple(table.geometry(t.glues[s], versions[s]) for s in range(4))
        out.append((GeometricTile(f"{t.name}_{version_code(versions)}", glues, geoms), versions))
    return out


def compile_datam_system(D: TileSystem):
    """Returns ``(S, variant_map)``; half tiles map to ``(duple tile, part)``."""
    if D.model != DATAM:
        raise UnsupportedInputError(f"expected a DaTAM system, got {D.model}")
    if D.temperature != 1:
        raise UnsupportedInputError(f"only temperature 1 is supported, got {D.temperature}")
    table = build_datam_geometries(D)
    numbers = {ti: i + 1 for i, ti in enumerate(_duple_types(D))}
    tiles, images, versions, index = [], [], [], {}

    def add(key, image, tile, vs):
        index[key] = len(tiles)
        tiles.append(tile)
        images.append(image)
        versions.append(vs)

    for ti, t in enumerate(D.tiles):
        if isinstance(t, DupleTile):
            for part in (0, 1):
                for tile, vs in compile_half_variants(t, part, numbers[ti], table):
                    add((ti, part, vs), (ti, part), tile, vs)
        else:
            for tile, vs in compile_square_variants(t, table):
                add((ti, 0, vs), ti, tile, vs)
    seed = compile_datam_seed(D, table, numbers, index)
    S = TileSystem(GTAM, COMPILED_GLUES, tiles, seed, 1, geometry_length=table.length)
    return S, VariantMap(tuple(images), tuple(versions))


def compile_datam_seed(D: TileSystem, table, numbers, index):
    """Split seed duples into halves, then fix versions as for square seeds."""
    where = {}
    for pos, (t, anchor) in D.seed.cells.items():
        part = D.footprints[t].index((pos[0] - anchor[0], pos[1] - anchor[1]))
        where[pos] = (t, part)
    cells = {pos: [ALPHA] * 4 for pos in where}

    def sides_of(pos):
        t, part = where[pos]
        tile = D.tiles[t]
        if isinstance(tile, DupleTile):
            return half_sides(tile, part), center_side(tile, part)
        return dict(enumerate(tile.glues)), None

    def geometry_of(pos, side, version):
        ext, c = sides_of(pos)
        if side == c:
            return table.center(numbers[where[pos][0]])
        return table.geometry(ext[side], version)

    fix_seed_versions(cells, geometry_of, fixed=lambda pos, side: side == sides_of(pos)[1])
    return Assembly({pos: (index[(where[pos][0], where[pos][1], tuple(v))], pos)
                     for pos, v in cells.items()})


def _half_info(S, vm, t):
    img = vm.images[t]
    return img if isinstance(img, tuple) else None


def _partner_cell(D, duple, part, pos):
    dx, dy = (a - b for a, b in zip(D.footprints[duple][1 - part], D.footprints[duple][part]))
    return (pos[0] + dx, pos[1] + dy)


def half_blocking_violations(S, vm, D, assemblies):
    """Check the two duple-half properties on simulator assemblies.

    A half never attaches while its partner cell is occupied, and a lone
    half's partner cell only ever accepts the matching half.  Returns a list
    of ``(assembly, message)``.
    """
    bad = []
    for a in assemblies:
        lone = {}
        for pos, (t, _) in a.cells.items():
            info = _half_info(S, vm, t)
            if info is None:
                continue
            q = _partner_cell(D, info[0], info[1], pos)
            if q not in a.cells:
                lone[q] = (info[0], 1 - info[1])
        for att in frontier(S, a):
            (pos,) = att.cells
            info = _half_info(S, vm, att.tile)
            if pos in lone and info != lone[pos]:
                bad.append((a, f"{S.tiles[att.tile].name} attaches in a lone half's partner cell {pos}"))
            if info is None:
                continue
            hit = a.cells.get(_partner_cell(D, info[0], info[1], pos))
            if hit is not None and _half_info(S, vm, hit[0]) != (info[0], 1 - info[1]):
                bad.append((a, f"half {S.tiles[att.tile].name} attaches at {pos} with its partner cell occupied"))
    return bad


def duple_overlap_violations(D, assemblies):
    """Source-side check: no duple attachment ever covers an occupied cell."""
    bad = []
    for a in assemblies:
        for att in frontier(D, a):
            if any(c in a.cells for c in att.cells):
                bad.append((a, f"{D.tiles[att.tile].name} at {att.anchor} overlaps"))
    return bad
