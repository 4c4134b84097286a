"""Deliberately broken simulators, used to show the checker notices.

Each helper takes a compiled system ``S`` with its ``VariantMap`` and the
source system ``T`` and returns ``(S', rep')`` ready for the checker.
"""
from __future__ import annotations

from .model import GTAM, Assembly, GeometricTile, Geometry, TileSystem
from .representation import scale_one


def _restrict(S, images, keep, T):
    idx = {old: new for new, old in enumerate(keep)}
    tiles = [S.tiles[i] for i in keep]
    seed = Assembly({p: (idx[t], a) for p, (t, a) in S.seed.cells.items()})
    S2 = TileSystem(GTAM, S.glues, tiles, seed, S.temperature, geometry_length=S.geometry_length)
    return S2, scale_one({idx[i]: images[i] for i in keep}, T)


def drop_variants(S, vm, T, pred):
    """Remove every compiled tile ``i`` with ``pred(image, versions)`` true.

    Seed tiles are always kept.
    """
    seed_tiles = {t for t, _ in S.seed.cells.values()}
    keep = [i for i in range(len(S.tiles))
            if i in seed_tiles or not pred(vm.images[i], vm.versions[i])]
    return _restrict(S, vm.images, keep, T)


def remap_image(S, vm, T, tile_name, new_image):
    """Representation that sends compiled tile ``tile_name`` to ``new_image``."""
    images = list(vm.images)
    images[S.tile_index(tile_name)] = new_image
    return _restrict(S, images, list(range(len(S.tiles))), T)


def flatten_geometries(S, vm, T, image):
    """Erase every bump on the variants of one source tile."""
    tiles = [GeometricTile(t.name, t.glues, tuple(Geometry(g.length, 0) for g in t.geometries))
             if vm.images[i] == image else t
             for i, t in enumerate(S.tiles)]
    S2 = TileSystem(GTAM, S.glues, tiles, S.seed, S.temperature, geometry_length=S.geometry_length)
    return S2, vm.representation(T)
