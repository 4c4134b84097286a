from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamsim.dynamics import AssemblySequence, SequencePolicy, run
from tamsim.errors import PreconditionError, WindowError
from tamsim.gallery import mismatch_square_system, period_line_system, zigzag_counter
from tamsim.model import (ATAM, GTAM, Assembly, GeometricTile, Geometry, GlueFunction, SquareTile,
                          TileSystem, binding_graph)
from tamsim.representation import scale_one
from tamsim.windows import (Window, bond_forming_submovie, find_repeat, fuzz_violation_scan,
                            is_valid_cut, jagged_window, movies_identical, pump_bound,
                            pumping_bound, record_movie, splice_pump_down, splice_pump_up,
                            vertical_windows)


def _line(period=3, length=100):
    T = period_line_system(period)
    return T, run(T, SequencePolicy(), length)


def test_never_crossed_window_is_empty():
    T, seq = _line()
    assert record_movie(seq, Window.vertical(500, 0, 0)).events == ()


def test_line_crossing_is_one_event():
    T, seq = _line()
    m = record_movie(seq, Window.vertical(10, 0, 0))
    assert len(m) == 1
    (e,) = m.events
    assert e.step == 10 and e.edge == ((9, 0), (10, 0)) and e.direction == "LR" and e.strength == 1
    # the tile placed at that step sits at x = 10
    assert seq.attachments[e.step - 1].anchor == (10, 0)


def test_seed_adjacencies_are_step_zero():
    gf = GlueFunction.from_diagonal(("null", "a"), (0, 1))
    T = TileSystem(ATAM, gf, [SquareTile("w", (0, 1, 0, 0)), SquareTile("e", (0, 0, 0, 1))],
                   [(0, (0, 0)), (1, (1, 0))], 1)
    m = record_movie(AssemblySequence(T, ()), Window.vertical(1, 0, 0))
    assert [(e.step, e.direction) for e in m.events] == [(0, "seed")]


def test_bond_forming_filter():
    T = mismatch_square_system()
    seq = AssemblySequence(T, [T.attachment("U", (0, 1)), T.attachment("R", (1, 0)),
                               T.attachment("A", (1, 1))])
    m = record_movie(seq, Window.vertical(1, 0, 1))
    # R binds S, A lands next to U without binding
    assert [e.strength for e in m.events] == [1, 0]
    assert [e.step for e in bond_forming_submovie(m).events] == [2]


def test_incompatible_adjacency_never_bonds():
    gf = GlueFunction.from_diagonal(("null", "a"), (0, 1))
    flat = Geometry(2)
    seed = GeometricTile("seed", (1, 0, 0, 0), (flat,) * 4)
    up = GeometricTile("up", (0, 1, 1, 0), (flat, Geometry.from_string("01"), flat, flat))
    post = GeometricTile("post", (1, 0, 0, 0), (flat, flat, flat, Geometry.from_string("10")))
    T = TileSystem(GTAM, gf, [seed, up, post], [(0, (0, 0))], 1)
    # post starts in the initial assembly; up's east bump meets post's west bump
    a = Assembly({(0, 0): (0, (0, 0)), (1, 1): (2, (1, 1))})
    seq = AssemblySequence(T, [T.attachment("up", (0, 1))], a)
    m = record_movie(seq, Window.vertical(1, 0, 1))
    assert [e.strength for e in m.events] == [0]
    assert binding_graph(seq.final, T).number_of_edges() == 1
    assert bond_forming_submovie(m).events == ()


def test_movie_identity():
    T, seq = _line()
    w10, w12, w13 = (Window.vertical(x, 0, 0) for x in (10, 12, 13))
    m10 = record_movie(seq, w10)
    assert movies_identical(m10, m10, (0, 0))
    assert movies_identical(m10, record_movie(seq, w13), (3, 0))
    assert not movies_identical(m10, record_movie(seq, w12), (2, 0))
    with pytest.raises(WindowError):
        movies_identical(m10, record_movie(seq, w13), (2, 0))


def test_find_repeat_on_period_three_line():
    T, seq = _line()
    w0, w1 = find_repeat(seq, vertical_windows(seq.final, range(5, 51)))
    assert (w0.column, w1.column) == (5, 8)
    assert find_repeat(seq, vertical_windows(seq.final, [5, 6])) is None


def test_pumping_bound():
    assert pumping_bound(1, 1) == (46081, 138245)
    assert pump_bound(0, 1) == (721, 2165)


@pytest.mark.parametrize("g", range(5))
@pytest.mark.parametrize("m", [1, 2])
def test_pumping_bound_oracle_and_monotone(g, m):
    B, n = pumping_bound(g, m)
    assert B == (g + 1) ** (6 * m) * prod(range(1, 6 * m + 1)) + 1 and n == 3 * B + 2
    if g < 4:
        assert pumping_bound(g + 1, m)[0] > B
    if m < 2:
        assert pumping_bound(g, m + 1)[0] > B


def test_splices_on_period_three_line():
    T, seq = _line()
    w0, w1 = find_repeat(seq, vertical_windows(seq.final, range(5, 51)))
    down = splice_pump_down(seq, w0, w1)
    assert down.valid and len(down.assembly) == 97
    assert down.sequence.replay() == down.assembly
    up = splice_pump_up(seq, w0, w1, copies=2)
    assert up.valid and len(up.assembly) == 106
    assert up.sequence.replay() == up.assembly
    same = splice_pump_up(seq, w0, w1, copies=0)
    assert same.valid and same.assembly == seq.final


def test_splice_needs_identical_movies():
    T, seq = _line()
    with pytest.raises(PreconditionError):
        splice_pump_down(seq, Window.vertical(10, 0, 0), Window.vertical(12, 0, 0))


@settings(max_examples=25)
@given(st.integers(2, 5), st.integers(30, 80), st.integers(0, 10), st.integers(1, 3))
def test_line_pumping_properties(period, length, start, copies):
    T, seq = _line(period, length)
    xs = range(start + 2, start + 2 + 2 * period)
    w0, w1 = find_repeat(seq, vertical_windows(seq.final, xs))
    assert w1.column - w0.column == period
    down = splice_pump_down(seq, w0, w1)
    assert down.valid and len(down.assembly) == len(seq.final) - period
    up = splice_pump_up(seq, w0, w1, copies)
    assert up.valid and len(up.assembly) == len(seq.final) + copies * period
    # pumping up once and back down returns the original assembly
    once = splice_pump_up(seq, w0, w1, 1)
    back = splice_pump_down(once.sequence, w0, w1)
    assert back.valid and back.assembly == seq.final


def test_counter_windows_are_valid_cuts():
    T = zigzag_counter(2)
    seq = run(T, SequencePolicy(), 200)
    for w in vertical_windows(seq.final, range(-1, 3)):
        assert is_valid_cut(w)
        record_movie(seq, w)


def _crossed_bonds(w, a, T):
    g = binding_graph(a, T)
    inst = a.cells
    return [e for e in w.edges if e[0] in inst and e[1] in inst and g.has_edge(inst[e[0]], inst[e[1]])]


def test_jagged_window_crosses_fewest_bonds():
    T = mismatch_square_system()
    a = T.assembly([("S", (0, 0)), ("U", (0, 1)), ("R", (1, 0)), ("A", (1, 1))])
    w = jagged_window(a, T, 1)
    assert is_valid_cut(w)
    # any cut of a connected assembly crosses a bond; here one is enough
    assert len(_crossed_bonds(w, a, T)) == 1
    assert ((0, 1), (1, 1)) in w.edges


def test_jagged_window_on_a_line():
    line_T, seq = _line()
    w = jagged_window(seq.final, line_T, 7, bbox=(0, -1, 20, 1))
    assert is_valid_cut(w)
    assert len(_crossed_bonds(w, seq.final, line_T)) == 1
    assert record_movie(seq, w).events[0].edge == ((6, 0), (7, 0))


def test_fuzz_scan_flags_diagonal_blocks():
    T = mismatch_square_system()
    rep = scale_one({0: 0}, T)
    clean = T.assembly([("S", (0, 0)), ("R", (1, 0))])
    fuzzy = T.assembly([("S", (0, 0)), ("R", (1, 0)), ("A", (1, 1))])
    assert fuzz_violation_scan(clean, rep) == []
    assert fuzz_violation_scan(fuzzy, rep) == [(1, 1)]
