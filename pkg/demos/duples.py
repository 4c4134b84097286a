"""Duples in the compiled system, and a case where lone halves get stuck.

A duple compiles into two square halves joined by a centre geometry that
only fits its own partner.  In the blocking demo a duple and a path of blue
tiles race for the same cell, and the compiled system keeps the race intact.

The second part replays a five-step sequence in a random duple system where
the south half of one duple and the north half of another both wait on the
same empty cell.  Neither partner can ever fit there, so the compiled
assembly has no image in the source system and the check reports it.
"""
from tamsim.corpus import random_datam_system
from tamsim.duple_compiler import compile_datam_system
from tamsim.dynamics import frontier
from tamsim.gallery import duple_blocking_demo
from tamsim.render import render_ascii
from tamsim.simulation import check_simulation

D = duple_blocking_demo()
S, variants = compile_datam_system(D)
print(f"blocking demo: {len(S.tiles)} compiled tiles, geometry length {S.geometry_length}")
print(check_simulation(S, D, variants.representation(D), bound=10).to_text())

D = random_datam_system(205)
S, variants = compile_datam_system(D)
a = S.seed
for name, pos in [("s1_aaaa", (0, -1)), ("s1_aaaa", (0, -2)), ("s1_aaaa", (0, -3)),
                  ("d0_A_caaa", (-1, -3)), ("d0_B_aaca", (-1, -1))]:
    a = a.attach(S.attachment(name, pos))
print(render_ascii(S, a, width=9))
hole = (-1, -2)
fits = [S.tiles[f.tile].name for f in frontier(S, a) if hole in f.cells]
print(f"tiles that fit the cell between the halves: {fits or 'none'}")

report = check_simulation(S, D, variants.representation(D), bound=8)
print(report.to_text())
