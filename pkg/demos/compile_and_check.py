"""Compile the mismatch square into a two-glue geometric system and check it.

The source system has four tiles and one glue.  Its corner tile can attach
on either of two sides, so it has two terminal squares.  After compiling,
every tile comes in 16 versions and the two glues only carry which version
a side is in; the geometries do the work the glue labels used to do.
"""
from tamsim.atam_compiler import build_glue_geometries, compile_atam_system
from tamsim.dynamics import enumerate_terminal
from tamsim.gallery import flexible_glue_demo, mismatch_square_system
from tamsim.render import render_ascii
from tamsim.simulation import check_simulation

T = mismatch_square_system()
terms, _ = enumerate_terminal(T, 4)
print(f"source: {len(T.tiles)} tiles, {len(terms)} terminal assemblies")
for a in sorted(terms, key=lambda a: a.digest()):
    print(render_ascii(T, a))

U, variants = compile_atam_system(T)
print(f"compiled: {len(U.tiles)} tiles, geometry length {U.geometry_length}")

report = check_simulation(U, T, variants.representation(T), bound=4)
print(report.to_text())

# glue geometries for a non-diagonal glue function
table = build_glue_geometries(flexible_glue_demo().glues)
for i in range(1, table.n + 1):
    print(f"glue {i}: alpha {table.geometry(i, 0)}  beta {table.geometry(i, 1)}")
