"""Seeded random systems used by property tests and the acceptance run."""
from __future__ import annotations

import random

from .model import (ATAM, DATAM, HORIZONTAL, VERTICAL, DupleTile, GlueFunction,
                    SquareTile, TileSystem)


def random_symmetric_matrix(rng, n, density=0.5, max_strength=1):
    """n x n symmetric matrix of strengths in 0..max_strength."""
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if rng.random() < density:
                m[i][j] = m[j][i] = rng.randint(1, max_strength)
    return m


def random_glue_function(rng, n, density=0.5, max_strength=1):
    m = random_symmetric_matrix(rng, n, density, max_strength)
    rows = [[0] * (n + 1)] + [[0] + row for row in m]
    return GlueFunction(("null",) + tuple(f"g{i}" for i in range(1, n + 1)), rows)


def _side(rng, n, null_p):
    return 0 if rng.random() < null_p else rng.randint(1, n)


def random_atam_system(seed, max_glues=5, max_tiles=6, density=0.5, null_p=0.5):
    """Temperature-1 aTAM system with a flexible glue function and a one-tile seed."""
    rng = random.Random(seed)
    n = rng.randint(1, max_glues)
    gf = random_glue_function(rng, n, density)
    tiles = [SquareTile(f"t{k}", [_side(rng, n, null_p) for _ in range(4)])
             for k in range(rng.randint(1, max_tiles))]
    return TileSystem(ATAM, gf, tiles, [(0, (0, 0))], 1)


def random_datam_system(seed, max_glues=4, max_duples=2, max_squares=4, null_p=0.5):
    """Temperature-1 DaTAM system with a diagonal glue function and a one-square seed."""
    rng = random.Random(seed)
    n = rng.randint(1, max_glues)
    gf = GlueFunction.from_diagonal(("null",) + tuple(f"g{i}" for i in range(1, n + 1)),
                                    (0,) + (1,) * n)
    tiles = [SquareTile(f"s{k}", [_side(rng, n, null_p) for _ in range(4)])
             for k in range(rng.randint(1, max_squares))]
    for k in range(rng.randint(0, max_duples)):
        orient = rng.choice((HORIZONTAL, VERTICAL))
        tiles.append(DupleTile(f"d{k}", orient, [_side(rng, n, null_p) for _ in range(6)]))
    return TileSystem(DATAM, gf, tiles, [(0, (0, 0))], 1)


def _bounded_size(T, bound, limit):
    from .dynamics import explore
    from .errors import ResourceLimitError
    try:
        return len(explore(T, bound, state_limit=limit).producible)
    except ResourceLimitError:
        return limit + 1


def tractable_corpus(make, count, bound=8, min_size=3, max_size=2000, start=0, **kwargs):
    """``count`` systems ``make(seed, **kwargs)`` whose bounded producible set has
    between ``min_size`` and ``max_size`` assemblies, as ``(seed, system)`` pairs.

    Draws that grow almost nothing or explode past the bound are skipped, so
    the seeds are deterministic but not contiguous.
    """
    out, seed = [], start
    while len(out) < count:
        T = make(seed, **kwargs)
        if min_size <= _bounded_size(T, bound, max_size) <= max_size:
            out.append((seed, T))
        seed += 1
    return out
