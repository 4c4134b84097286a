"""Attachment, frontier, assembly sequences and bounded enumeration."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import AttachmentError, ResourceLimitError
from .model import STEP, Assembly, Attachment, TileSystem, opposite

LEX, LOWEST_Y_FIRST, RANDOM = "lex", "lowy", "random"

DEFAULT_STATE_LIMIT = 2_000_000


@dataclass(frozen=True)
class SequencePolicy:
    kind: str = LEX
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (LEX, LOWEST_Y_FIRST, RANDOM):
            raise ValueError(f"unknown policy {self.kind!r}")

    @classmethod
    def lex(cls):
        return cls(LEX)

    @classmethod
    def lowest_y_first(cls):
        return cls(LOWEST_Y_FIRST)

    @classmethod
    def random(cls, seed):
        return cls(RANDOM, seed)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded check; ``truncated`` means the bound cut growth short."""

    holds: bool
    bound: int
    truncated: bool
    detail: str = ""

    def __bool__(self):
        return self.holds


def _neighbor_label(sys, cells, q, side):
    """Label facing cell ``q`` from its ``side`` neighbour, or -1 if empty."""
    dx, dy = STEP[side]
    p = (q[0] + dx, q[1] + dy)
    hit = cells.get(p)
    if hit is None:
        return -1
    t, anchor = hit
    return sys.side_label[t][((p[0] - anchor[0], p[1] - anchor[1]), opposite(side))]


def attachable(sys: TileSystem, a: Assembly, att: Attachment) -> bool:
    cells = a.cells
    for c in att.cells:
        if c in cells:
            return False
    x, y = att.anchor
    total = 0
    inter = sys.interaction
    for (dx, dy), side, lab in sys.exterior[att.tile]:
        cell = (x + dx, y + dy)
        other = _neighbor_label(sys, cells, cell, side)
        if other < 0:
            continue
        strength, ok = inter[lab][other]
        if not ok:
            return False
        total += strength
    return total >= sys.temperature


def _squares_for(sys, sig):
    hit = sys.attach_cache.get(sig)
    if hit is not None:
        return hit
    inter = sys.interaction
    out = []
    for t in sys.square_tiles:
        labels = sys.side_label[t]
        total = 0
        for side, other in enumerate(sig):
            if other < 0:
                continue
            strength, ok = inter[labels[((0, 0), side)]][other]
            if not ok:
                break
            total += strength
        else:
            if total >= sys.temperature:
                out.append(t)
    out = tuple(out)
    sys.attach_cache[sig] = out
    return out


def empty_neighbors(a: Assembly):
    cells = a.cells
    out = set()
    for (x, y) in cells:
        for dx, dy in STEP:
            q = (x + dx, y + dy)
            if q not in cells:
                out.add(q)
    return out


def frontier(sys: TileSystem, a: Assembly):
    """All legal single-tile attachments, sorted by (y, x, tile)."""
    cells = a.cells
    found = set()
    empties = empty_neighbors(a)
    for q in empties:
        sig = tuple(_neighbor_label(sys, cells, q, s) for s in range(4))
        for t in _squares_for(sys, sig):
            found.add(Attachment(t, q, (q,)))
    for t in sys.multi_tiles:
        fp = sys.footprints[t]
        for q in empties:
            for dx, dy in fp:
                att = sys.attachment(t, (q[0] - dx, q[1] - dy))
                if att not in found and attachable(sys, a, att):
                    found.add(att)
    return sorted(found, key=Attachment.sort_key)


def frontier_locations(sys, a):
    return {att.cells for att in frontier(sys, a)}


def attach(a: Assembly, att: Attachment, sys: TileSystem = None) -> Assembly:
    """New assembly with ``att`` placed; with ``sys`` given, legality is enforced."""
    if sys is not None and not attachable(sys, a, att):
        raise AttachmentError(f"tile {att.tile} cannot attach at {att.anchor}",
                              attachment=att)
    return a.attach(att)


@dataclass
class AssemblySequence:
    system: TileSystem
    attachments: tuple = ()
    initial: Assembly = None
    _final: Assembly = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.attachments = tuple(self.attachments)
        if self.initial is None:
            self.initial = self.system.seed

    def __len__(self):
        return len(self.attachments)

    def assemblies(self):
        """The initial assembly followed by the assembly after each step."""
        a = self.initial
        yield a
        for att in self.attachments:
            a = a.attach(att)
            yield a

    @property
    def final(self):
        if self._final is None:
            for a in self.assemblies():
                pass
            self._final = a
        return self._final

    def replay(self, system=None):
        """Re-check every step against ``system``; returns the final assembly."""
        system = system or self.system
        a = self.initial
        for i, att in enumerate(self.attachments):
            if not attachable(system, a, att):
                raise AttachmentError(f"step {i + 1}: tile {att.tile} cannot attach at {att.anchor}",
                                      step=i + 1, attachment=att)
            a = a.attach(att)
        return a

    def is_valid(self, system=None):
        try:
            self.replay(system)
        except AttachmentError:
            return False
        return True


def _lowest_y_key(att):
    return (min(c[1] for c in att.cells), att.anchor[0], att.tile)


def run(sys: TileSystem, policy: SequencePolicy = SequencePolicy(), max_tiles=1000):
    """Grow from the seed following ``policy`` until terminal or ``max_tiles`` instances."""
    rng = random.Random(policy.seed) if policy.kind == RANDOM else None
    a = sys.seed
    steps = []
    while len(a) < max_tiles:
        options = frontier(sys, a)
        if not options:
            break
        if policy.kind == LEX:
            att = options[0]
        elif policy.kind == LOWEST_Y_FIRST:
            att = min(options, key=_lowest_y_key)
        else:
            att = rng.choice(options)
        a = a.attach(att)
        steps.append(att)
    seq = AssemblySequence(sys, steps)
    seq._final = a
    return seq


@dataclass
class Exploration:
    producible: set
    terminal: set
    truncated: bool


def explore(sys: TileSystem, max_tiles, state_limit=DEFAULT_STATE_LIMIT):
    """Breadth-first search over producible assemblies with at most ``max_tiles`` instances."""
    seen = {sys.seed}
    terminal = set()
    truncated = False
    layer = [sys.seed]
    while layer:
        nxt = []
        for a in layer:
            options = frontier(sys, a)
            if not options:
                terminal.add(a)
                continue
            if len(a) >= max_tiles:
                truncated = True
                continue
            for att in options:
                b = a.attach(att)
                if len(b) > max_tiles:
                    truncated = True
                    continue
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > state_limit:
                        raise ResourceLimitError(
                            f"more than {state_limit} producible assemblies within {max_tiles} tiles",
                            partial_count=len(seen))
        layer = nxt
    return Exploration(seen, terminal, truncated)


def enumerate_producible(sys, max_tiles, state_limit=DEFAULT_STATE_LIMIT):
    return frozenset(explore(sys, max_tiles, state_limit).producible)


def enumerate_terminal(sys, max_tiles, state_limit=DEFAULT_STATE_LIMIT):
    ex = explore(sys, max_tiles, state_limit)
    return frozenset(ex.terminal), ex.truncated


def is_directed(sys, max_tiles, state_limit=DEFAULT_STATE_LIMIT) -> Verdict:
    """At most one terminal assembly and all maximal assemblies agree cell by cell."""
    ex = explore(sys, max_tiles, state_limit)
    if len(ex.terminal) > 1:
        return Verdict(False, max_tiles, ex.truncated, f"{len(ex.terminal)} terminal assemblies")
    maximal = [a for a in ex.producible if a in ex.terminal or len(a) >= max_tiles]
    seen = {}
    for a in maximal:
        for pos, (t, _) in a.cells.items():
            if seen.setdefault(pos, t) != t:
                return Verdict(False, max_tiles, ex.truncated, f"maximal assemblies disagree at {pos}")
    return Verdict(True, max_tiles, ex.truncated)


def is_sass(sys, max_tiles, state_limit=DEFAULT_STATE_LIMIT) -> Verdict:
    """Every producible assembly within the bound has at most one frontier location."""
    seen = {sys.seed}
    stack = [sys.seed]
    truncated = False
    while stack:
        a = stack.pop()
        options = frontier(sys, a)
        if len({att.cells for att in options}) > 1:
            return Verdict(False, max_tiles, truncated,
                           f"{len(options)} attachments possible after {len(a)} tiles")
        if options and len(a) >= max_tiles:
            truncated = True
            continue
        for att in options:
            b = a.attach(att)
            if b not in seen:
                seen.add(b)
                stack.append(b)
                if len(seen) > state_limit:
                    raise ResourceLimitError("state limit reached", partial_count=len(seen))
    return Verdict(True, max_tiles, truncated)


def is_zigzag(sys, max_tiles, state_limit=DEFAULT_STATE_LIMIT) -> Verdict:
    """SASS, and the frontier location's y never decreases along the growth."""
    sass = is_sass(sys, max_tiles, state_limit)
    if not sass:
        return sass
    a = sys.seed
    last_y = None
    while len(a) < max_tiles:
        options = frontier(sys, a)
        if not options:
            break
        att = options[0]
        y = min(c[1] for c in att.cells)
        if last_y is not None and y < last_y:
            return Verdict(False, max_tiles, sass.truncated,
                           f"frontier moved down from y={last_y} to y={y} after {len(a)} tiles")
        last_y = y
        a = a.attach(att)
    return Verdict(True, max_tiles, sass.truncated)
