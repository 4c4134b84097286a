"""Break the compiled mismatch square on purpose and watch the checker catch it.

Each mutant targets one clause of the simulation check.  The witness is a
concrete assembly sequence that can be replayed on its own.
"""
from tamsim.atam_compiler import ALPHA, compile_atam_system
from tamsim.gallery import mismatch_square_system
from tamsim.mutants import drop_variants, flatten_geometries, remap_image
from tamsim.simulation import check_simulation

T = mismatch_square_system()
U, variants = compile_atam_system(T)
A = T.tile_index("A")

mutants = {
    "no A tiles at all": drop_variants(U, variants, T, lambda img, vs: img == A),
    "U_aaaa read as R": remap_image(U, variants, T, "U_aaaa", T.tile_index("R")),
    "A without alpha south and west":
        drop_variants(U, variants, T, lambda img, vs: img == A and vs[2] == ALPHA and vs[3] == ALPHA),
    "A with flat edges": flatten_geometries(U, variants, T, A),
}

for label, (S, rep) in mutants.items():
    report = check_simulation(S, T, rep, bound=4)
    failed = [name for name, c in report.clauses.items() if not c.passed]
    print(f"{label}: exit {report.exit_code()}, failing {failed}")
    for name in failed:
        witness = report.clauses[name].witness
        if witness is not None:
            witness.replay()
            print(f"  {name}: {witness.describe()}")
