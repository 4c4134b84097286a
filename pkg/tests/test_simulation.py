import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamsim.atam_compiler import ALPHA, compile_atam_system
from tamsim.corpus import random_atam_system, random_datam_system
from tamsim.duple_compiler import compile_datam_system
from tamsim.dynamics import explore
from tamsim.errors import ResourceLimitError
from tamsim.gallery import flexible_glue_demo, mismatch_square_system
from tamsim.model import Assembly
from tamsim.mutants import drop_variants, flatten_geometries, remap_image
from tamsim.representation import (BlockRepresentation, block_at, fuzz_violations,
                                   maps_cleanly, rep_star, scale_one, validity_violations)
from tamsim.simulation import (SimulationContext, check_equivalent_productions, check_follows,
                               check_models, check_simulation, identity_representation)


def _square():
    T = mismatch_square_system()
    U, vm = compile_atam_system(T)
    return T, U, vm


def test_block_indexing_at_scale_two():
    T = mismatch_square_system()
    rep = BlockRepresentation(2, {}, T)
    a = Assembly({(0, 0): (0, (0, 0)), (1, 1): (1, (1, 1))})
    block = block_at(a, rep, 0, 0)
    assert len(block) == 4 and sum(e is not None for e in block) == 2
    assert block == ((0, 0), None, None, (1, 0))


def test_scale_one_block_is_the_cell():
    T = mismatch_square_system()
    rep = identity_representation(T)
    assert block_at(T.seed, rep, 0, 0) == ((0, 0),)
    assert block_at(T.seed, rep, 3, 3) == (None,)


def test_rep_star_basics():
    T, U, vm = _square()
    rep = vm.representation(T)
    assert rep_star(rep, Assembly()) == Assembly()
    a = U.assembly([("S_aaaa", (0, 0)), ("U_aaaa", (0, 1)), ("R_aaaa", (1, 0))])
    assert rep_star(rep, a) == T.assembly([("S", (0, 0)), ("U", (0, 1)), ("R", (1, 0))])
    # a tile outside the table's domain maps to empty space
    partial = scale_one({0: 0}, T)
    assert rep_star(partial, a) == T.seed


def test_fuzz_rules():
    T = mismatch_square_system()
    partial = scale_one({0: 0, 1: 1}, T)
    side = T.assembly([("S", (0, 0)), ("R", (1, 0))])
    diagonal = T.assembly([("S", (0, 0)), ("A", (1, 1))])
    assert fuzz_violations(side, partial) == []
    assert fuzz_violations(diagonal, partial) == [(1, 1)]
    assert maps_cleanly(T.seed, identity_representation(T))
    assert not maps_cleanly(diagonal, partial)


def test_validity_of_scale_two_tables():
    T = mismatch_square_system()
    full = ((0, 0), (0, 0), (0, 0), (0, 0))
    part = ((0, 0), None, None, None)
    assert validity_violations(BlockRepresentation(2, {full: 0, part: 0}, T)) == []
    assert len(validity_violations(BlockRepresentation(2, {full: 0, part: 1}, T))) == 1


def test_identity_simulation_passes():
    T = mismatch_square_system()
    r = check_simulation(T, T, identity_representation(T), 4)
    assert r.passed and r.exit_code() == 0


def test_identity_simulation_of_a_duple_system():
    D = random_datam_system(3)
    r = check_simulation(D, D, identity_representation(D), 5)
    assert r.passed


def test_compiled_square_passes_all_clauses():
    T, U, vm = _square()
    rep = vm.representation(T)
    ctx = SimulationContext(U, T, rep, 4)
    for check in (check_equivalent_productions, check_follows, check_models):
        assert check(U, T, rep, 4, ctx).passed
    r = check_simulation(U, T, rep, 4)
    assert r.passed
    assert r.stats["simulated assemblies"] == 8


def test_single_assembly_system_is_vacuous():
    from tamsim.model import ATAM, GlueFunction, SquareTile, TileSystem
    gf = GlueFunction.from_diagonal(("null", "g"), (0, 1))
    T = TileSystem(ATAM, gf, [SquareTile("s", (0, 0, 0, 0))], [(0, (0, 0))], 1)
    U, vm = compile_atam_system(T)
    assert check_models(U, T, vm.representation(T), 3).passed


def test_dropped_variants_break_productions():
    T, U, vm = _square()
    A = T.tile_index("A")
    S, rep = drop_variants(U, vm, T, lambda img, vs: img == A)
    r = check_simulation(S, T, rep, 4)
    c = r.clauses["productions"]
    assert not c.passed and c.witness.system == "simulated"
    c.witness.replay()
    assert r.exit_code() == 3


def test_wrong_entry_breaks_follows():
    T, U, vm = _square()
    S, rep = remap_image(U, vm, T, "U_aaaa", T.tile_index("R"))
    c = check_simulation(S, T, rep, 4).clauses["follows"]
    assert not c.passed and c.witness.system == "simulator"
    c.witness.replay()


def test_missing_alpha_variants_break_only_models():
    T, U, vm = _square()
    A = T.tile_index("A")
    S, rep = drop_variants(U, vm, T, lambda img, vs: img == A and vs[2] == ALPHA and vs[3] == ALPHA)
    r = check_simulation(S, T, rep, 4)
    assert {n for n, c in r.clauses.items() if not c.passed} == {"models"}
    r.clauses["models"].witness.replay()


def test_flattened_geometry_breaks_productions():
    T, U, vm = _square()
    S, rep = flatten_geometries(U, vm, T, T.tile_index("A"))
    r = check_simulation(S, T, rep, 4)
    assert not r.clauses["productions"].passed


def test_state_limit_is_inconclusive():
    T, U, vm = _square()
    r = check_simulation(U, T, vm.representation(T), 4, state_limit=3)
    assert r.passed and r.inconclusive and r.exit_code() == 4


def _images(ctx):
    nodes = ctx.sim.nodes.values()
    images = {n.image for n in nodes if n.image is not None}
    terminal = {n.image for n in nodes if n.terminal and n.image is not None}
    return images, terminal


def _cross_check(S, T, rep, bound):
    try:
        merged = SimulationContext(S, T, rep, bound, state_limit=20_000)
        plain = SimulationContext(S, T, rep, bound, state_limit=20_000, merge=False)
    except ResourceLimitError:
        return
    assert _images(merged) == _images(plain)
    verdicts = [{name: getattr(ctx, name)().passed
                 for name in ("productions", "terminals", "clean", "follows", "models")}
                for ctx in (merged, plain)]
    assert verdicts[0] == verdicts[1]


@settings(max_examples=12)
@given(st.integers(0, 3000))
def test_merging_matches_plain_exploration(seed):
    T = random_atam_system(seed, max_tiles=4, max_glues=3)
    U, vm = compile_atam_system(T)
    _cross_check(U, T, vm.representation(T), 3)


@pytest.mark.parametrize("mutant", ["drop", "remap", "models"])
def test_merging_matches_plain_exploration_on_mutants(mutant):
    T, U, vm = _square()
    A = T.tile_index("A")
    if mutant == "drop":
        S, rep = drop_variants(U, vm, T, lambda img, vs: img == A)
    elif mutant == "remap":
        S, rep = remap_image(U, vm, T, "U_aaaa", T.tile_index("R"))
    else:
        S, rep = drop_variants(U, vm, T, lambda img, vs: img == A and vs[2] == ALPHA and vs[3] == ALPHA)
    _cross_check(S, T, rep, 4)


def test_merging_matches_plain_exploration_flexible():
    T = flexible_glue_demo()
    U, vm = compile_atam_system(T)
    _cross_check(U, T, vm.representation(T), 3)


@settings(max_examples=8)
@given(st.integers(0, 3000))
def test_merging_matches_plain_exploration_duples(seed):
    D = random_datam_system(seed, max_squares=2, max_duples=1, max_glues=2)
    S, vm = compile_datam_system(D)
    _cross_check(S, D, vm.representation(D), 3)


def test_report_rendering():
    T, U, vm = _square()
    r = check_simulation(U, T, vm.representation(T), 4)
    text = r.to_text()
    assert "productions: pass" in text and "models: pass" in text
    d = r.to_dict()
    assert d["passed"] and set(d["clauses"]) == {"productions", "terminals", "clean", "follows", "models"}
    assert explore(T, 4).producible
