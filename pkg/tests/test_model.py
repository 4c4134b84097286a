from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tamsim.errors import (AsymmetricGlueError, GeometrySizeError, InvalidGlueError, ModelError,
                           UnstableSeedError)
from tamsim.gallery import flexible_glue_demo, mismatch_square_system
from tamsim.model import (ATAM, DATAM, GTAM, HORIZONTAL, DupleTile, GeometricTile, Geometry,
                          GlueFunction, SquareTile, TileSystem, bonds, geometry_compatible,
                          glue_strength, is_tau_stable, self_incompatible)

bits = st.integers(1, 12).flatmap(lambda n: st.text("01", min_size=n, max_size=n))


def _compatible_by_strings(a: str, b: str):
    # position i of one side meets position L+1-i of the other
    return not any(x == "1" and y == "1" for x, y in zip(a, reversed(b)))


def test_geometry_string_positions():
    assert Geometry.from_string("10110").positions == (1, 3, 4)
    assert str(Geometry.from_positions(5, [1, 3, 4])) == "10110"


@pytest.mark.parametrize("bad", ["", "102", "ab"])
def test_bad_geometry_strings(bad):
    with pytest.raises(GeometrySizeError):
        Geometry.from_string(bad)


def test_geometry_length_mismatch():
    with pytest.raises(GeometrySizeError):
        geometry_compatible(Geometry.from_string("10"), Geometry.from_string("100"))


@given(bits, st.data())
def test_compatibility_matches_string_oracle(a, data):
    b = data.draw(st.text("01", min_size=len(a), max_size=len(a)))
    ga, gb = Geometry.from_string(a), Geometry.from_string(b)
    assert geometry_compatible(ga, gb) == _compatible_by_strings(a, b)
    assert geometry_compatible(ga, gb) == geometry_compatible(gb, ga)


@pytest.mark.parametrize("L", range(1, 13))
def test_self_incompatibility_exhaustive(L):
    for mask in range(1 << L):
        g = Geometry(L, mask)
        s = str(g)
        palindromic_bump = any(s[i] == "1" and s[L - 1 - i] == "1" for i in range(L))
        assert self_incompatible(g) == palindromic_bump


@given(bits)
def test_reversal_is_involution(a):
    g = Geometry.from_string(a)
    assert g.reversed().reversed() == g
    assert str(g.reversed()) == a[::-1]


def test_flexible_matrix_entries():
    gf = flexible_glue_demo().glues
    assert glue_strength(gf, 1, 1) == 0
    assert glue_strength(gf, 1, 2) == 1
    assert glue_strength(gf, 3, 3) == 1
    assert glue_strength(gf, gf.label(2), gf.label(1)) == 1


def test_glue_errors():
    with pytest.raises(AsymmetricGlueError):
        GlueFunction(("null", "a", "b"), ((0, 0, 0), (0, 1, 1), (0, 0, 1)))
    with pytest.raises(InvalidGlueError):
        GlueFunction(("null", "a"), ((0, 1), (1, 1)))
    with pytest.raises(InvalidGlueError):
        glue_strength(GlueFunction.from_diagonal(("null", "a"), (0, 1)), 0, 7)


def test_model_kind_checks():
    gf = GlueFunction.from_diagonal(("null", "a"), (0, 1))
    with pytest.raises(ModelError):
        TileSystem(ATAM, gf, [DupleTile("d", HORIZONTAL, (0,) * 6)], [(0, (0, 0))], 1)
    flex = flexible_glue_demo().glues
    with pytest.raises(ModelError):
        TileSystem(DATAM, flex, [SquareTile("s", (1, 0, 0, 0))], [(0, (0, 0))], 1)
    g = Geometry(2)
    t1 = GeometricTile("a", (1, 0, 0, 0), (g,) * 4)
    t2 = GeometricTile("b", (0, 0, 1, 0), (Geometry(3),) * 4)
    with pytest.raises(GeometrySizeError):
        TileSystem(GTAM, gf, [t1, t2], [(0, (0, 0))], 1)


def test_unstable_seed_rejected():
    gf = GlueFunction.from_diagonal(("null", "a"), (0, 1))
    t = SquareTile("t", (0, 0, 0, 0))
    with pytest.raises(UnstableSeedError):
        TileSystem(ATAM, gf, [t], [(0, (0, 0)), (0, (1, 0))], 1)


def _stable_by_bipartitions(a, sys):
    """Every split of the instances is held together by at least tau."""
    insts = sorted(a.placements)
    weight = {}
    for u, v, s, ok, _, _ in bonds(a, sys):
        if s > 0 and ok:
            weight[frozenset((u, v))] = weight.get(frozenset((u, v)), 0) + s
    for r in range(1, len(insts)):
        for part in combinations(insts[1:], r - 1):
            side = {insts[0], *part}
            cut = sum(w for e, w in weight.items() if len(e & side) == 1)
            if cut < sys.temperature:
                return False
    return True


@given(st.sets(st.tuples(st.integers(0, 2), st.integers(0, 1)), min_size=1, max_size=5),
       st.lists(st.integers(0, 4), min_size=6, max_size=6))
def test_stability_matches_bipartition_oracle(cells, picks):
    T = mismatch_square_system()
    placements = [(picks[k % 6], p) for k, p in enumerate(sorted(cells))]
    a = T.assembly(placements)
    assert is_tau_stable(a, T) == _stable_by_bipartitions(a, T)
