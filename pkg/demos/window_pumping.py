"""Window movies on a line that repeats every three tiles.

A vertical cut at x = c records the glues that cross it, in order.  Two
cuts with the same movie up to translation bound a segment that can be cut
out or repeated, and the result is still a valid assembly sequence.
"""
from tamsim.dynamics import SequencePolicy, run
from tamsim.gallery import period_line_system
from tamsim.windows import (find_repeat, pumping_bound, record_movie, splice_pump_down,
                            splice_pump_up, vertical_windows)

T = period_line_system(3)
seq = run(T, SequencePolicy(), 100)
print(f"line of {len(seq.final)} tiles")

for w in vertical_windows(seq.final, [5, 6, 7, 8]):
    (e,) = record_movie(seq, w).events
    print(f"x = {w.column}: step {e.step}, glue {e.left_label[0]} meets {e.right_label[0]}")

w0, w1 = find_repeat(seq, vertical_windows(seq.final, range(5, 51)))
print(f"first repeat between x = {w0.column} and x = {w1.column}")

down = splice_pump_down(seq, w0, w1)
up = splice_pump_up(seq, w0, w1, copies=2)
print(f"pumped down: {len(down.assembly)} tiles, valid {down.valid}")
print(f"pumped up twice: {len(up.assembly)} tiles, valid {up.valid}")

B, n = pumping_bound(1, 1)
print(f"one glue at scale 1: B = {B}, iterations n = 3B + 2 = {n}")
