"""Temperature-1 aTAM with an arbitrary symmetric glue function -> GTAM with two glues.

Each source glue i gets two geometries of length 4n laid out as four
width-n domains ``[a1 | b1 | b2 | a2]``.  The alpha geometry has one bump in
a1 at position i and a bump in a2 at every j with G(i, j) = 0; a1/b1 are
numbered left to right and a2/b2 right to left, so a2 position j meets a1
position j of the abutting side.  The beta geometry does the same in the b
domains.  Same-version pairs are therefore compatible exactly when the
glues bind, and alpha/beta pairs are always compatible.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import TamError, UnsupportedInputError
from .model import (ATAM, GTAM, E, N, Assembly, GeometricTile, Geometry,
                    GlueFunction, TileSystem, geometry_compatible, neighbor, opposite)
from .representation import scale_one

ALPHA, BETA = 0, 1
VERSION_CHARS = "ab"
COMPILED_GLUES = GlueFunction.from_diagonal(("null", "g_alpha", "g_beta"), (0, 1, 1))
G_ALPHA, G_BETA = 1, 2


def domain_offsets(n):
    """Absolute (1-based) position of domain slot ``i`` for a1, b1, b2, a2."""
    return {
        "a1": lambda i: i,
        "b1": lambda i: n + i,
        "b2": lambda j: 3 * n + 1 - j,
        "a2": lambda j: 4 * n + 1 - j,
    }


@dataclass(frozen=True)
class GlueGeometryTable:
    """Geometries per source glue id and version; id 0 is the null glue."""

    n: int
    alpha: tuple
    beta: tuple

    @property
    def length(self):
        return 4 * self.n

    def geometry(self, glue, version):
        return (self.alpha, self.beta)[version][glue]

    def domains(self, glue, version):
        """Each domain as a bit string in absolute left-to-right order."""
        bits = str(self.geometry(glue, version))
        n = self.n
        return {name: bits[k * n:(k + 1) * n] for k, name in enumerate(("a1", "b1", "b2", "a2"))}


def build_glue_geometries(gf: GlueFunction) -> GlueGeometryTable:
    n = gf.size - 1
    if n < 1:
        raise UnsupportedInputError("need at least one non-null glue")
    at = domain_offsets(n)
    L = 4 * n
    alpha, beta = [], []
    # null glue: empty identity domain, every incompatibility slot filled
    alpha.append(Geometry.from_positions(L, [at["a2"](j) for j in range(1, n + 1)]))
    beta.append(Geometry.from_positions(L, [at["b2"](j) for j in range(1, n + 1)]))
    for i in range(1, n + 1):
        misses = [j for j in range(1, n + 1) if gf.strengths[i][j] == 0]
        alpha.append(Geometry.from_positions(L, [at["a1"](i)] + [at["a2"](j) for j in misses]))
        beta.append(Geometry.from_positions(L, [at["b1"](i)] + [at["b2"](j) for j in misses]))
    return GlueGeometryTable(n, tuple(alpha), tuple(beta))


def version_code(versions):
    return "".join(VERSION_CHARS[v] for v in versions)


def compile_tile_variants(t, table: GlueGeometryTable, g_alpha=G_ALPHA, g_beta=G_BETA):
    """The 16 version variants of a square tile, in ``itertools.product`` order."""
    out = []
    for versions in product((ALPHA, BETA), repeat=4):
        glues = tuple(0 if t.glues[s] == 0 else (g_alpha, g_beta)[versions[s]] for s in range(4))
        geoms = tuple(table.geometry(t.glues[s], versions[s]) for s in range(4))
        out.append(GeometricTile(f"{t.name}_{version_code(versions)}", glues, geoms))
    return out


@dataclass(frozen=True)
class VariantMap:
    """For every compiled tile: the source image and the per-side versions."""

    images: tuple
    versions: tuple

    def representation(self, target, lone_half="footprint"):
        return scale_one(dict(enumerate(self.images)), target, lone_half)


def fix_seed_versions(cells, geometry_of, fixed=lambda pos, side: False):
    """Flip sides to beta until no abutting pair is incompatible.

    ``cells`` maps position -> list of 4 versions and is updated in place.
    Interior edges are visited in (y, x, direction) order and the later cell
    of a mismatched edge gets its side flipped.  Returns the number of flips.
    """
    flips = 0
    for pos in sorted(cells, key=lambda p: (p[1], p[0])):
        for side in (N, E):
            q = neighbor(pos, side)
            if q not in cells:
                continue
            back = opposite(side)
            g1 = geometry_of(pos, side, cells[pos][side])
            g2 = geometry_of(q, back, cells[q][back])
            if geometry_compatible(g1, g2):
                continue
            if fixed(q, back):
                raise TamError(f"seed fix-up cannot flip fixed side at {q}")
            cells[q][back] ^= 1
            flips += 1
            if not geometry_compatible(g1, geometry_of(q, back, cells[q][back])):
                raise TamError(f"seed fix-up failed on edge {pos}-{q}")
    return flips


def compile_seed(source: TileSystem, table: GlueGeometryTable, variant_index):
    """Seed of the compiled system; ``variant_index[(tile, versions)]`` gives compiled ids."""
    cells = {pos: [ALPHA] * 4 for pos in source.seed.cells}
    tile_at = {pos: t for pos, (t, _) in source.seed.cells.items()}

    def geometry_of(pos, side, version):
        return table.geometry(source.tiles[tile_at[pos]].glues[side], version)

    fix_seed_versions(cells, geometry_of)
    return Assembly({pos: (variant_index[(tile_at[pos], tuple(v))], pos) for pos, v in cells.items()})


def compile_atam_system(T: TileSystem):
    """Returns ``(U, variant_map)`` with U a temperature-1 GTAM system over glues {g_alpha, g_beta}."""
    if T.model != ATAM:
        raise UnsupportedInputError(f"expected an aTAM system, got {T.model}")
    if T.temperature != 1:
        raise UnsupportedInputError(f"only temperature 1 is supported, got {T.temperature}")
    table = build_glue_geometries(T.glues)
    tiles, images, versions, index = [], [], [], {}
    for ti, t in enumerate(T.tiles):
        for variant, vs in zip(compile_tile_variants(t, table), product((ALPHA, BETA), repeat=4)):
            index[(ti, vs)] = len(tiles)
            tiles.append(variant)
            images.append(ti)
            versions.append(vs)
    seed = compile_seed(T, table, index)
    U = TileSystem(GTAM, COMPILED_GLUES, tiles, seed, 1, geometry_length=table.length)
    return U, VariantMap(tuple(images), tuple(versions))
