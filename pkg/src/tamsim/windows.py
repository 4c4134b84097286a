"""Windows (lattice cuts), window movies and the pumping splices built on them."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import networkx as nx

from .dynamics import AssemblySequence, frontier
from .errors import AttachmentError, PreconditionError, WindowError
from .model import STEP, Assembly, Attachment
from .representation import fuzz_violations


def _adjacent(p, q):
    return abs(p[0] - q[0]) + abs(p[1] - q[1]) == 1


@dataclass(frozen=True)
class Window:
    """A cut given as edges ``(left_cell, right_cell)``.

    A vertical window (``column`` set) puts every cell with x < column on the
    left.  A jagged window lists its left cells inside ``bbox``; cells west
    or east of the box fall on the left or right respectively.
    """

    edges: tuple
    bbox: tuple
    column: int = None
    left: frozenset = None

    @classmethod
    def vertical(cls, c, ymin, ymax):
        edges = tuple(((c - 1, y), (c, y)) for y in range(ymin, ymax + 1))
        return cls(edges, (c - 1, ymin, c, ymax), column=c)

    def side(self, cell):
        if self.column is not None:
            return "L" if cell[0] < self.column else "R"
        xmin, ymin, xmax, ymax = self.bbox
        if cell[0] < xmin:
            return "L"
        if cell[0] > xmax:
            return "R"
        if not ymin <= cell[1] <= ymax:
            raise WindowError(f"cell {cell} lies outside the window's box {self.bbox}")
        return "L" if cell in self.left else "R"

    def crossing(self, p, q):
        """``(edge, p_side)`` if the adjacent cells p, q lie on the window, else None."""
        if (p, q) in self._edge_set:
            return (p, q), "L"
        if (q, p) in self._edge_set:
            return (q, p), "R"
        return None

    @property
    def _edge_set(self):
        s = self.__dict__.get("_es")
        if s is None:
            s = frozenset(self.edges)
            object.__setattr__(self, "_es", s)
        return s

    def translated(self, dx, dy):
        edges = tuple(((l[0] + dx, l[1] + dy), (r[0] + dx, r[1] + dy)) for l, r in self.edges)
        xmin, ymin, xmax, ymax = self.bbox
        bbox = (xmin + dx, ymin + dy, xmax + dx, ymax + dy)
        if self.column is not None:
            return Window(edges, bbox, column=self.column + dx)
        return Window(edges, bbox, left=frozenset((x + dx, y + dy) for x, y in self.left))

    def translation_to(self, other):
        """Vector t with ``self.translated(*t) == other``, or None."""
        if len(self.edges) != len(other.edges) or not self.edges:
            return None
        a, b = sorted(self.edges), sorted(other.edges)
        t = (b[0][0][0] - a[0][0][0], b[0][0][1] - a[0][0][1])
        return t if self.translated(*t) == other else None

    def __eq__(self, other):
        return (isinstance(other, Window) and self._edge_set == other._edge_set
                and self.column == other.column and self.left == other.left)

    def __hash__(self):
        return hash((self._edge_set, self.column))


def is_valid_cut(w: Window, bbox=None):
    """True when removing the window's edges splits ``bbox`` into exactly two parts."""
    xmin, ymin, xmax, ymax = bbox or w.bbox
    g = nx.grid_2d_graph(range(xmin, xmax + 1), range(ymin, ymax + 1))
    g.remove_edges_from(w.edges)
    comps = list(nx.connected_components(g))
    if len(comps) != 2:
        return False
    for comp in comps:
        sides = {w.side(c) for c in comp}
        if len(sides) != 1:
            return False
    return True


def jagged_window(a: Assembly, sys, c, bbox=None):
    """Rectilinear cut from top to bottom of ``bbox`` near x = c crossing as few bonds as possible.

    Corners of the dual lattice are integer points; corner (i, j) is the
    lower-left corner of cell (i, j).  The search minimises, in order, the
    number of bonds crossed, the path length and the distance from x = c.
    """
    from .model import bonds
    if bbox is None:
        x0, y0, x1, y1 = a.bbox()
        bbox = (x0 - 1, y0, x1 + 1, y1)
    xmin, ymin, xmax, ymax = bbox
    bound = set()
    for _, _, strength, ok, pos, side in bonds(a, sys):
        if strength > 0 and ok:
            q = (pos[0] + STEP[side][0], pos[1] + STEP[side][1])
            bound.add(frozenset((pos, q)))
    span = (xmax - xmin + 2) * (ymax - ymin + 2)
    step_cost = span + 1
    # dearer than any bond-free path, so crossing counts dominate
    bond_cost = (span + 1) * (step_cost + xmax - xmin + 1)

    def weight(i, cells):
        return (bond_cost if frozenset(cells) in bound else 0) + step_cost + abs(i - c)

    g = nx.Graph()
    for i in range(xmin + 1, xmax + 1):
        for j in range(ymin, ymax + 1):
            # vertical dual edge between cells (i-1, j) and (i, j)
            cells = ((i - 1, j), (i, j))
            g.add_edge((i, j), (i, j + 1), weight=weight(i, cells), cells=cells)
    for i in range(xmin + 1, xmax):
        for j in range(ymin + 1, ymax + 1):
            # horizontal dual edge between cells (i, j-1) and (i, j)
            cells = ((i, j - 1), (i, j))
            g.add_edge((i, j), (i + 1, j), weight=weight(i, cells), cells=cells)
    start, goal = (c, ymax + 1), (c, ymin)
    if start not in g or goal not in g:
        raise WindowError(f"x = {c} lies outside the box {bbox}")
    try:
        path = nx.shortest_path(g, start, goal, weight="weight")
    except nx.NetworkXNoPath:
        raise WindowError(f"no cut near x = {c}") from None
    cut = [g.edges[u, v]["cells"] for u, v in zip(path, path[1:])]
    grid = nx.grid_2d_graph(range(xmin, xmax + 1), range(ymin, ymax + 1))
    grid.remove_edges_from(cut)
    left = nx.node_connected_component(grid, (xmin, ymin))
    edges = tuple(sorted((p, q) if p in left else (q, p) for p, q in cut))
    w = Window(edges, bbox, left=frozenset(left))
    if not is_valid_cut(w):
        raise WindowError(f"cut near x = {c} does not split the box in two")
    return w


@dataclass(frozen=True)
class GlueEvent:
    """One adjacency formed across a window.

    ``direction`` is ``"LR"`` when the tile placed at ``step`` lies on the
    right side (growth went from left to right) and ``"RL"`` otherwise; the
    seed's own adjacencies are step 0 with direction ``"seed"``.
    """

    step: int
    edge: tuple
    left_label: tuple
    right_label: tuple
    strength: int
    direction: str

    def relative(self, t=(0, 0)):
        (l, r) = self.edge
        edge = ((l[0] - t[0], l[1] - t[1]), (r[0] - t[0], r[1] - t[1]))
        return (edge, self.left_label, self.right_label, self.strength, self.direction)


@dataclass(frozen=True)
class WindowMovie:
    window: Window
    events: tuple

    def __len__(self):
        return len(self.events)


def _label(sys, a, pos, side):
    lab = sys.label_facing(a, pos, side)
    glue, geom = sys.labels[lab]
    return (sys.glues.names[glue], None if geom is None else str(geom))


def _side_towards(p, q):
    return STEP.index((q[0] - p[0], q[1] - p[1]))


def _event(sys, a, step, edge, direction):
    l, r = edge
    d = _side_towards(l, r)
    la, lb = sys.label_facing(a, l, d), sys.label_facing(a, r, (d + 2) % 4)
    strength, ok = sys.interaction[la][lb]
    return GlueEvent(step, edge, _label(sys, a, l, d), _label(sys, a, r, (d + 2) % 4),
                     strength if ok else 0, direction)


def record_movie(seq: AssemblySequence, w: Window) -> WindowMovie:
    sys = seq.system
    events = []
    a = seq.initial
    for edge in sorted(w.edges):
        l, r = edge
        if l in a.cells and r in a.cells and a.cells[l] != a.cells[r]:
            events.append(_event(sys, a, 0, edge, "seed"))
    for step, att in enumerate(seq.attachments, 1):
        b = a.attach(att)
        found = []
        for p in att.cells:
            for dx, dy in STEP:
                q = (p[0] + dx, p[1] + dy)
                if q not in a.cells:
                    continue
                hit = w.crossing(p, q)
                if hit is not None:
                    found.append((hit[0], "LR" if hit[1] == "R" else "RL"))
        for edge, direction in sorted(found):
            events.append(_event(sys, b, step, edge, direction))
        a = b
    return WindowMovie(w, tuple(events))


def bond_forming_submovie(m: WindowMovie) -> WindowMovie:
    return WindowMovie(m.window, tuple(e for e in m.events if e.strength > 0))


def movies_identical(m1: WindowMovie, m2: WindowMovie, translation) -> bool:
    """Same events in the same relative order once ``translation`` is undone."""
    if m1.window.translated(*translation) != m2.window:
        raise WindowError(f"windows are not translates by {translation}")
    if len(m1) != len(m2):
        return False
    return all(e1.relative() == e2.relative(translation) for e1, e2 in zip(m1.events, m2.events))


def find_repeat(seq, windows, bond_forming=False):
    """First pair ``(w, w')`` in list order whose movies are identical, or None."""
    movies = [record_movie(seq, w) for w in windows]
    if bond_forming:
        movies = [bond_forming_submovie(m) for m in movies]
    for i, m1 in enumerate(movies):
        for m2 in movies[i + 1:]:
            t = m1.window.translation_to(m2.window)
            if t is None:
                raise WindowError("windows must be translates of one another")
            if movies_identical(m1, m2, t):
                return m1.window, m2.window
    return None


def vertical_windows(a: Assembly, xs):
    """Vertical cuts at each x in ``xs`` spanning the assembly's height."""
    _, ymin, _, ymax = a.bbox()
    return [Window.vertical(x, ymin, ymax) for x in xs]


def pumping_bound(g, m):
    """``(B, n)``: movie-variety bound B and the iteration count 3B + 2."""
    if g < 0 or m < 1:
        raise ValueError("need g >= 0 and m >= 1")
    B = (g + 1) ** (6 * m) * factorial(6 * m) + 1
    return B, 3 * B + 2


pump_bound = pumping_bound


class SpliceResult:
    """``(assembly, sequence, valid)``, with ``problem`` saying what went wrong."""

    def __init__(self, assembly, sequence, valid, problem=""):
        self.assembly, self.sequence, self.valid, self.problem = assembly, sequence, valid, problem

    def __iter__(self):
        return iter((self.assembly, self.sequence, self.valid))

    def __repr__(self):
        return f"SpliceResult(valid={self.valid}, tiles={len(self.sequence)}, problem={self.problem!r})"


def _sides(w, att):
    sides = {w.side(c) for c in att.cells}
    if len(sides) != 1:
        raise PreconditionError(f"tile at {att.anchor} straddles the window")
    return sides.pop()


def _levels(seq, movie, keep):
    """Attachments kept by ``keep`` keyed by (events before them, is_event, step)."""
    event_steps = [e.step for e in movie.events]
    creates = {e.step for e in movie.events}
    out = []
    k = 0
    for step, att in enumerate(seq.attachments, 1):
        while k < len(event_steps) and event_steps[k] < step:
            k += 1
        if keep(att):
            out.append(((k, step in creates), step, att))
    return out


def _shift(att, t):
    return Attachment(att.tile, (att.anchor[0] + t[0], att.anchor[1] + t[1]),
                      tuple((x + t[0], y + t[1]) for x, y in att.cells))


def _splice(seq, wa, wb, shift, movies=None):
    """Left of ``wa`` merged with the right of ``wb`` shifted by ``shift``.

    ``wb`` shifted must equal ``wa``.  The two halves are interleaved by
    their position relative to the window events, so both sides see the
    window glues appear in the recorded order.
    """
    if wb.translated(*shift) != wa:
        raise PreconditionError("windows do not line up after the shift")
    ma, mb = movies or (record_movie(seq, wa), record_movie(seq, wb))
    if not movies_identical(mb, ma, shift):
        raise PreconditionError("window movies differ; the splice is not justified")
    for c in seq.initial.cells:
        if wa.side(c) != "L" or wb.side(c) != "L":
            raise PreconditionError("the seed must lie left of both windows")
    left = _levels(seq, ma, lambda att: _sides(wa, att) == "L")
    right = [(key, step, _shift(att, shift))
             for key, step, att in _levels(seq, mb, lambda att: _sides(wb, att) == "R")]
    merged = sorted([(key, 0, step, att) for key, step, att in left]
                    + [(key, 1, step, att) for key, step, att in right],
                    key=lambda item: item[:3])
    sequence = AssemblySequence(seq.system, [item[3] for item in merged], seq.initial)
    cells = dict(seq.initial.cells)
    for att in sequence.attachments:
        clash = [c for c in att.cells if c in cells]
        if clash:
            return SpliceResult(None, sequence, False, f"cells {clash} collide")
        for c in att.cells:
            cells[c] = (att.tile, att.anchor)
    try:
        final = sequence.replay()
    except AttachmentError as exc:
        return SpliceResult(Assembly(cells), sequence, False, str(exc.args[0]))
    return SpliceResult(final, sequence, True)


def splice_pump_down(seq, w0, w1) -> SpliceResult:
    """Cut out the segment between ``w0`` and ``w1`` (w1 = w0 + t)."""
    t = w0.translation_to(w1)
    if t is None:
        raise PreconditionError("w1 is not a translate of w0")
    return _splice(seq, w0, w1, (-t[0], -t[1]))


def splice_pump_up(seq, w0, w1, copies=1) -> SpliceResult:
    """Repeat the segment between ``w0`` and ``w1`` ``copies`` more times."""
    if copies < 0:
        raise ValueError("copies must be non-negative")
    t = w0.translation_to(w1)
    if t is None:
        raise PreconditionError("w1 is not a translate of w0")
    if copies == 0:
        m0, m1 = record_movie(seq, w0), record_movie(seq, w1)
        if not movies_identical(m0, m1, t):
            raise PreconditionError("window movies differ; the splice is not justified")
        return SpliceResult(seq.replay(), seq, True)
    result = None
    cur, a, b = seq, w0, w1
    for _ in range(copies):
        result = _splice(cur, b, a, t)
        if not result.valid:
            return result
        cur, a, b = result.sequence, b, b.translated(*t)
    return result


def fuzz_violation_scan(a: Assembly, rep):
    """Non-empty blocks (and strip cells) that break the clean-mapping rule."""
    return fuzz_violations(a, rep)


def can_reach(sys, start: Assembly, goal, extra_tiles, state_limit=100_000):
    """Bounded reachability: can growth from ``start`` reach an assembly satisfying ``goal``
    within ``extra_tiles`` more tiles?"""
    seen = {start}
    layer = [start]
    for _ in range(extra_tiles + 1):
        nxt = []
        for a in layer:
            if goal(a):
                return True
            for att in frontier(sys, a):
                b = a.attach(att)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if len(seen) > state_limit:
            raise PreconditionError(f"reachability search exceeded {state_limit} assemblies")
        layer = nxt
    return False
